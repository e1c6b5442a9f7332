#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "z4ap/bounds.hpp"
#include "z4ap/cosets.hpp"
#include "z4ap/group.hpp"

namespace z4ap {

enum class SearchMethod { exhaustive, branch_and_bound, greedy, random_restart };

std::string to_string(SearchMethod m);
/// Accepts the CLI spellings: exhaustive, bnb, greedy, restart (and the long
/// enum names).
std::optional<SearchMethod> parse_method(std::string_view name);

struct SearchResult {
    int n = 0;
    SearchMethod method = SearchMethod::branch_and_bound;
    std::size_t best_size = 0;
    PointSet witness;
    bool exact_flag = false;  // best_size proven maximal
    std::uint64_t nodes_explored = 0;
    std::uint64_t seed = 0;
};

/// Largest progression-free subset by complete search. branch_and_bound
/// grows {0} along the lex element order with remaining-candidate pruning
/// (translation canonicalization: some optimum contains 0). exhaustive
/// checks every subset containing 0 and is capped at n <= 2. budget caps
/// explored nodes, 0 = unlimited; on exhaustion the best found so far comes
/// back with exact_flag false.
SearchResult exact_r3(int n, std::uint64_t budget = 0,
                      SearchMethod method = SearchMethod::branch_and_bound);

/// Seeded heuristics, exact_flag always false. greedy: one pass over a
/// shuffled element order, keeping what fits. random_restart: repeated
/// greedy passes plus plateau swap moves, best over all restarts within the
/// move budget. Deterministic for a fixed (n, method, seed, budget).
SearchResult heuristic_r3(int n, SearchMethod method, std::uint64_t seed,
                          std::uint64_t budget = 200'000);

/// The greedy pass over an explicit candidate order; building block of the
/// heuristics and the hook for enumerating all orders in tests.
PointSet greedy_from_order(int n, std::span<const GroupVector> order);

/// Consolidated checks over one concrete set: progression-freeness with
/// witness, coset profile summary, the integral decomposition, the rich
/// coset assertion over the epsilon grid k/100 (k = 1..24), and the size
/// against the global bounds.
struct VerifyReport {
    int n = 0;
    std::size_t size = 0;
    bool progression_free = false;
    std::optional<ProgressionTriple> violation;
    std::size_t nonempty_cosets = 0;
    std::uint32_t max_coset_count = 0;
    IntegralCheckReport integral;
    std::vector<RichCosetReport> rich_grid;
    bool rich_all_hold = true;  // assertion or vacuous, every grid point
    double theorem_bound_value = 0;
    double finite_bound_value = 0;
    bool within_theorem_bound = true;  // size <= 4^{gamma n}
    bool within_finite_bound = true;   // size < (n+2) 4^{gamma n}
    bool all_ok = false;
};

VerifyReport verify_set(const PointSet& a, int digits = 50);
VerifyReport verify_file(const std::string& path, int digits = 50);

}  // namespace z4ap
