#pragma once

// Full-rank lattices Lambda = A Z^N given by exact basis columns.  Entries
// are XReal, so rational bases stay exact end to end (determinants, duals,
// kernels) while irrational entries (continued-fraction values, square
// roots) carry certified enclosures.
//
// A lattice can carry a DiophForm tag marking it as
//     Lambda_Theta = { (p + Theta q, q) : p in Z^r, q in Z^s },
// which unlocks exact slice counting and, when all Theta entries are +-alpha
// for one continued-fraction alpha, the convergent-based nu fast path.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakadm/errors.hpp"
#include "weakadm/shape.hpp"
#include "weakadm/xreal.hpp"

namespace weakadm {

class CFNumber;

struct DiophForm {
    int r = 1;
    int s = 1;
    std::vector<XReal> theta;                // r x s, row-major
    std::shared_ptr<const CFNumber> cf;      // set when theta is +-alpha throughout
    std::vector<int> cf_sign;                // per entry, when cf is set
};

class Lattice {
public:
    // cols[j] is the j-th basis vector (length N).  The determinant is
    // certified nonzero at construction (exact for rational bases).
    static Lattice make(std::vector<std::vector<XReal>> cols, std::string id = "");

    int dim() const { return (int)cols_.size(); }
    const std::vector<XReal>& col(int j) const { return cols_[j]; }
    const XReal& entry(int i, int j) const { return cols_[j][i]; }
    const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

    bool all_rational() const { return rational_; }

    // A z for an integer coefficient vector.
    std::vector<XReal> point(const std::vector<long long>& z) const;

    const XReal& det() const { return det_; }
    XReal det_abs() const { return abs(det_); }

    // Inverse basis matrix (rows x cols), adjugate over determinant.
    const std::vector<std::vector<XReal>>& inverse() const;
    // Gram matrix G[i][j] = <col_i, col_j>.
    const std::vector<std::vector<XReal>>& gram() const;
    // Dual lattice basis: columns of A^{-T}.
    Lattice dual() const;
    // Lattice scaled by a rational factor k != 0.
    Lattice scaled(const mpq_class& k) const;

    // Cached double enclosures of the basis entries (row i, col j).
    const std::vector<std::vector<DIv>>& fast_entries() const;

    std::optional<DiophForm> dioph;

private:
    std::vector<std::vector<XReal>> cols_;
    XReal det_;
    bool rational_ = false;
    std::string id_;
    mutable std::shared_ptr<std::vector<std::vector<XReal>>> inv_;
    mutable std::shared_ptr<std::vector<std::vector<XReal>>> gram_;
    mutable std::shared_ptr<std::vector<std::vector<DIv>>> fast_;
};

// Determinant of a square XReal matrix (column-major), Laplace expansion.
// Fine for the desk scales this project targets (N <= 6 enforced).
XReal det_expansion(const std::vector<std::vector<XReal>>& cols);

} // namespace weakadm
