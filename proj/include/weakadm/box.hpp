#pragma once

// Aligned boxes Z_Q = prod_i B_{y_i}(Q_i): per-block closed euclidean balls
// of radius Q_i around centers y_i.  Carries the derived quantities used by
// the counting bounds:
//
//   Qbar      = (prod Q_i^{beta_i})^{1/t}      (weighted geometric mean)
//   theta_i   = Qbar / Q_i,   theta_min = Qbar / Q_max
//   phi       = the block-diagonal map scaling block i by theta_i; it fixes
//               Nm_beta and maps Z_Q into a cube of side 2 Qbar.
//
// Construction enforces the side condition Q_i <= Qbar for every block
// outside I ("balanced outside the excluded set"); try_make reports the
// violation instead of throwing.  The comparison is exact for rational
// radii (integerized exponents), certified otherwise.

#include <optional>
#include <string>
#include <vector>

#include "weakadm/shape.hpp"

namespace weakadm {

struct BoxSpec {
    Shape shape;
    std::vector<XReal> center;    // length N
    std::vector<XReal> radii;     // length n (one radius per block)

    XReal qbar;
    XReal qmax, qmin;
    int qmax_block = 0, qmin_block = 0;
    std::vector<XReal> theta;     // length n
    XReal theta_min;

    XReal volume() const;                    // prod_i vol(B^{m_i}) Q_i^{m_i}
    std::vector<XReal> phi_center() const;   // phi(y)
    XReal phi_center_norm() const;           // |phi(y)|
    bool origin_inside(mpfr_prec_t max_bits = 0) const;

    static BoxSpec make(Shape s, std::vector<XReal> center, std::vector<XReal> radii);
    static std::optional<BoxSpec> try_make(Shape s, std::vector<XReal> center,
                                           std::vector<XReal> radii, std::string* why);
    // Cube of radius q around y: all blocks share one radius node, so
    // Qbar = q exactly and the side condition is an exact tie.
    static BoxSpec cube(Shape s, std::vector<XReal> center, const XReal& q);
};

} // namespace weakadm
