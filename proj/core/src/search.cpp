#include "z4ap/search.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "z4ap/set_io.hpp"

namespace z4ap {

namespace {

// All of Z_4^n in lex order. Memory-bound: 4^n words.
std::vector<GroupVector> universe(int n) {
    if (n < 1) throw DomainError("search needs n >= 1");
    if (n > 10) throw CapacityError("search enumerates 4^n elements, n <= 10");
    std::vector<std::uint64_t> packed(std::size_t(1) << (2 * n));
    for (std::uint64_t v = 0; v < packed.size(); ++v) packed[v] = v;
    std::sort(packed.begin(), packed.end(),
              [n](std::uint64_t a, std::uint64_t b) {
                  return GroupVector(n, a).lex_key() < GroupVector(n, b).lex_key();
              });
    std::vector<GroupVector> out;
    out.reserve(packed.size());
    for (std::uint64_t v : packed) out.emplace_back(n, v);
    return out;
}

// Incrementally maintained progression-free set. can_add(x) is O(|A|):
// x closes a progression either as the doubled element (2x equals a stored
// pairwise sum) or as an endpoint (2c - x is already present for some c;
// the other endpoint is automatically distinct from c and from x).
class Builder {
public:
    explicit Builder(int n) : n_(n) {}

    std::size_t size() const { return elems_.size(); }
    const std::vector<GroupVector>& elements() const { return elems_; }

    bool contains(const GroupVector& x) const {
        return index_.count(x.packed()) != 0;
    }

    bool can_add(const GroupVector& x) const {
        if (contains(x)) return false;
        if (sums_.count(x.doubled().packed())) return false;
        for (const GroupVector& c : elems_)
            if (index_.count(c.doubled().sub(x).packed())) return false;
        return true;
    }

    void add(const GroupVector& x) {
        for (const GroupVector& a : elems_) ++sums_[a.add(x).packed()];
        index_.emplace(x.packed(), elems_.size());
        elems_.push_back(x);
    }

    // swap-with-last removal, O(|A|)
    void remove(const GroupVector& x) {
        auto it = index_.find(x.packed());
        if (it == index_.end()) return;
        std::size_t pos = it->second;
        index_.erase(it);
        std::swap(elems_[pos], elems_.back());
        if (pos < elems_.size() - 1) index_[elems_[pos].packed()] = pos;
        elems_.pop_back();
        for (const GroupVector& a : elems_) {
            auto s = sums_.find(a.add(x).packed());
            if (--s->second == 0) sums_.erase(s);
        }
    }

    PointSet to_set() const { return PointSet::from_vectors(n_, elems_); }

private:
    int n_;
    std::vector<GroupVector> elems_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::unordered_map<std::uint64_t, std::uint32_t> sums_;
};

// Fisher-Yates with an explicit draw so the permutation is pinned to the
// generator, not to a library distribution.
void shuffle_pinned(std::vector<GroupVector>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

void emit_check(const SearchResult& r) {
    if (!is_progression_free(r.witness).progression_free)
        throw Error("internal: search emitted a set with a progression");
}

struct Bnb {
    std::uint64_t budget = 0;  // 0 = unlimited
    std::uint64_t nodes = 0;
    bool aborted = false;
    Builder builder;
    std::size_t best = 0;
    std::vector<GroupVector> best_set;

    explicit Bnb(int n) : builder(n) {}

    void run(const std::vector<GroupVector>& cands) {
        if (budget && nodes >= budget) {
            aborted = true;
            return;
        }
        ++nodes;
        if (builder.size() > best) {
            best = builder.size();
            best_set = builder.elements();
        }
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (builder.size() + (cands.size() - k) <= best) return;
            const GroupVector& x = cands[k];
            if (!builder.can_add(x)) continue;
            builder.add(x);
            std::vector<GroupVector> next;
            next.reserve(cands.size() - k - 1);
            for (std::size_t j = k + 1; j < cands.size(); ++j)
                if (builder.can_add(cands[j])) next.push_back(cands[j]);
            run(next);
            builder.remove(x);
            if (aborted) return;
        }
    }
};

}  // namespace

std::string to_string(SearchMethod m) {
    switch (m) {
        case SearchMethod::exhaustive: return "exhaustive";
        case SearchMethod::branch_and_bound: return "branch_and_bound";
        case SearchMethod::greedy: return "greedy";
        case SearchMethod::random_restart: return "random_restart";
    }
    return "?";
}

std::optional<SearchMethod> parse_method(std::string_view name) {
    if (name == "exhaustive") return SearchMethod::exhaustive;
    if (name == "bnb" || name == "branch_and_bound")
        return SearchMethod::branch_and_bound;
    if (name == "greedy") return SearchMethod::greedy;
    if (name == "restart" || name == "random_restart")
        return SearchMethod::random_restart;
    return std::nullopt;
}

SearchResult exact_r3(int n, std::uint64_t budget, SearchMethod method) {
    SearchResult out;
    out.n = n;
    out.method = method;
    std::vector<GroupVector> all = universe(n);

    if (method == SearchMethod::exhaustive) {
        // every subset containing 0; translation puts some optimum there
        if (n > 2)
            throw CapacityError("exhaustive enumerates 2^(4^n - 1) subsets, n <= 2");
        std::size_t rest = all.size() - 1;  // all[0] is the zero vector
        std::uint64_t total = std::uint64_t(1) << rest;
        std::size_t best = 0;
        std::uint64_t best_mask = 0;
        std::uint64_t examined = 0;
        bool aborted = false;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (budget && examined >= budget) {
                aborted = true;
                break;
            }
            ++examined;
            std::size_t sz = 1 + static_cast<std::size_t>(std::popcount(mask));
            if (sz <= best) continue;
            std::vector<GroupVector> pts{all[0]};
            for (std::size_t j = 0; j < rest; ++j)
                if (mask >> j & 1) pts.push_back(all[j + 1]);
            PointSet s = PointSet::from_vectors(n, pts);
            if (is_progression_free(s).progression_free) {
                best = sz;
                best_mask = mask;
            }
        }
        out.nodes_explored = examined;
        out.exact_flag = !aborted;
        std::vector<GroupVector> pts{all[0]};
        for (std::size_t j = 0; j < rest; ++j)
            if (best_mask >> j & 1) pts.push_back(all[j + 1]);
        out.witness = PointSet::from_vectors(n, pts);
        out.best_size = out.witness.size();
        emit_check(out);
        return out;
    }

    if (method != SearchMethod::branch_and_bound)
        throw DomainError("exact search methods are exhaustive and branch_and_bound");
    Bnb engine(n);
    engine.budget = budget;
    engine.builder.add(all[0]);  // the zero vector, lex-first
    std::vector<GroupVector> cands(all.begin() + 1, all.end());
    engine.run(cands);
    out.best_size = engine.best;
    out.witness = PointSet::from_vectors(n, engine.best_set);
    out.exact_flag = !engine.aborted;
    out.nodes_explored = engine.nodes;
    emit_check(out);
    return out;
}

PointSet greedy_from_order(int n, std::span<const GroupVector> order) {
    Builder b(n);
    for (const GroupVector& x : order)
        if (b.can_add(x)) b.add(x);
    return b.to_set();
}

SearchResult heuristic_r3(int n, SearchMethod method, std::uint64_t seed,
                          std::uint64_t budget) {
    if (method != SearchMethod::greedy && method != SearchMethod::random_restart)
        throw DomainError("heuristic methods are greedy and random_restart");
    SearchResult out;
    out.n = n;
    out.method = method;
    out.seed = seed;
    std::vector<GroupVector> all = universe(n);
    std::mt19937_64 rng(seed);

    if (method == SearchMethod::greedy) {
        shuffle_pinned(all, rng);
        out.witness = greedy_from_order(n, all);
        out.best_size = out.witness.size();
        out.nodes_explored = all.size();
        emit_check(out);
        return out;
    }

    std::uint64_t moves = 0;
    std::size_t best = 0;
    PointSet best_set(n);
    while (moves < budget) {
        shuffle_pinned(all, rng);
        Builder b(n);
        for (const GroupVector& x : all) {
            ++moves;
            if (b.can_add(x)) b.add(x);
        }
        // plateau phase: evict one random element, try a random outsider
        std::uint64_t local = 2 * std::uint64_t(all.size());
        for (std::uint64_t t = 0; t < local && moves < budget; ++t) {
            ++moves;
            const GroupVector& x = all[rng() % all.size()];
            if (b.contains(x)) continue;
            if (b.can_add(x)) {
                b.add(x);
                continue;
            }
            const GroupVector& y = b.elements()[rng() % b.size()];
            GroupVector victim = y;
            b.remove(victim);
            if (b.can_add(x))
                b.add(x);
            else
                b.add(victim);
        }
        if (b.size() > best) {
            best = b.size();
            best_set = b.to_set();
        }
    }
    out.best_size = best;
    out.witness = best_set;
    out.nodes_explored = moves;
    emit_check(out);
    return out;
}

VerifyReport verify_set(const PointSet& a, int digits) {
    VerifyReport out;
    out.n = a.dim();
    out.size = a.size();
    auto pf = is_progression_free(a);
    out.progression_free = pf.progression_free;
    out.violation = pf.witness;

    CosetProfile prof = coset_profile(a);
    out.nonempty_cosets = prof.counts.size();
    out.max_coset_count = prof.counts.empty() ? 0 : prof.counts.front();
    out.integral = integral_decomposition_check(prof, digits);

    out.rich_grid.reserve(24);
    for (int k = 1; k <= 24; ++k)
        out.rich_grid.push_back(rich_coset_report(a, Rational(k, 100), digits));
    if (out.progression_free)
        for (const RichCosetReport& r : out.rich_grid)
            if (!r.vacuous && !r.assertion_holds) out.rich_all_hold = false;

    if (out.n >= 1) {
        out.theorem_bound_value = theorem_bound(out.n);
        out.finite_bound_value = finite_bound(out.n);
        if (out.progression_free) {
            out.within_theorem_bound =
                static_cast<double>(out.size) <= out.theorem_bound_value;
            out.within_finite_bound =
                static_cast<double>(out.size) < out.finite_bound_value;
        }
    }
    out.all_ok = out.progression_free && out.integral.all_ok &&
                 out.rich_all_hold && out.within_theorem_bound &&
                 out.within_finite_bound;
    return out;
}

VerifyReport verify_file(const std::string& path, int digits) {
    return verify_set(read_set_file(path), digits);
}

}  // namespace z4ap
