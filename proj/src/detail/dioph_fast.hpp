#pragma once

// Internal fast paths for lattices in Diophantine form (p + Theta q, q).
// Counting never enumerates p: for each integer q-vector in the q-window the
// admissible p_i fill an interval, and #integers in [l, u] is
// floor(u) - ceil(l) + 1, certified (exact for rational endpoints, interval
// escalation otherwise; irrational endpoints cannot tie, so this always
// decides).  The nu staircase for +-alpha forms scans convergents only:
// between consecutive convergent denominators the distance ||q alpha|| keeps
// its record value, so no other q can improve the product Nm.

#include <map>
#include <vector>

#include "weakadm/box.hpp"
#include "weakadm/enumerate.hpp"
#include "weakadm/lattice.hpp"

namespace weakadm {
namespace detail {

bool dioph_applicable(const Lattice& L, const BoxSpec& box);

long long dioph_count(const Lattice& L, const BoxSpec& box, const EnumOptions& opts);
long long dioph_count_multiples(const Lattice& L, long long k, const BoxSpec& box,
                                const EnumOptions& opts);
long long dioph_count_primitive(const Lattice& L, const BoxSpec& box,
                                const EnumOptions& opts);
std::map<long long, long long> dioph_gcd_histogram(const Lattice& L, const BoxSpec& box,
                                                   const EnumOptions& opts);

// convergent-based nu records (requires dioph->cf)
bool dioph_cf_applicable(const Lattice& L, const Shape& s);
std::vector<NuSample> dioph_cf_records(const Lattice& L, const Shape& s,
                                       const XReal& rho_max);

} // namespace detail
} // namespace weakadm
