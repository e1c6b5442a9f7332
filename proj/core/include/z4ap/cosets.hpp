#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "z4ap/group.hpp"
#include "z4ap/hp.hpp"

namespace z4ap {

/// Multiset of nonempty 2-torsion-coset sizes of a set A, plus the survival
/// function N(x) = number of cosets holding at least x elements.
struct CosetProfile {
    int n = 0;
    std::vector<std::uint32_t> counts;  // descending
    std::uint64_t total = 0;            // |A|

    std::uint64_t n_at_least(double x) const;
    std::uint64_t n_at_least_int(std::uint64_t x) const;
};

CosetProfile coset_profile(const PointSet& a);

struct BCResult {
    PointSet b;  // union of pairwise-sum sets 2.A_R, encoded in F_2^n
    PointSet c;  // union of doubling images 2*R, encoded in F_2^n
    bool disjoint = false;
};

/// Builds B and C over the selected cosets, named by their mod-2
/// representatives; each must be a nonempty coset of A.
BCResult build_B_and_C(const PointSet& a,
                       std::span<const GroupVector> selected);

struct RichCosetReport {
    int n = 0;
    Rational epsilon;
    double eps_value = 0;
    double threshold = 0;       // 2^{n H(1/2 - eps) + 1}
    double threshold_log2 = 0;
    std::uint64_t rich_count = 0;
    double bound = 0;           // 2^{n H(2 eps)}
    double bound_log2 = 0;
    bool vacuous = false;       // threshold > 2^n
    bool assertion_holds = false;  // rich_count < bound, certified
    int precision_bits = 0;
};

/// Counts the cosets at or above the richness threshold with certified
/// integer-versus-transcendental comparisons (directed rounding, precision
/// escalation on undecided margins).
RichCosetReport rich_coset_report(const PointSet& a, const Rational& eps,
                                  int digits = 50);
/// The representatives of the rich cosets, lex order.
std::vector<GroupVector> rich_cosets(const PointSet& a, const Rational& eps,
                                     int digits = 50);

struct ReplayStep {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ReplayTrace {
    int n = 0;
    Rational epsilon;
    long ceil_2eps_n = 0;  // exact rational ceiling
    int d = 0;             // n - ceil_2eps_n
    RichCosetReport rich;
    bool hypothesis_satisfiable = false;  // rich_count >= bound
    bool contradiction_found = false;     // counterfactual branch ran dry
    std::vector<ReplayStep> steps;
    bool all_ok = false;
};

/// Replays the rich-coset argument on concrete data. Expected branch
/// (rich_count < bound): records "hypothesis of contradiction not
/// satisfiable" and validates every individually testable step. The
/// counterfactual branch chases the vanishing polynomial through the
/// doubling points until a step fails or the contradiction completes.
ReplayTrace replay_proposition(const PointSet& a, const Rational& eps,
                               int digits = 50);

}  // namespace z4ap
