#include "z4ap/group.hpp"

#include <algorithm>
#include <unordered_map>

namespace z4ap {

namespace {

constexpr std::uint64_t kLo = 0x5555555555555555ull;

// Reverse the 32 2-bit groups of a word: bswap, then reverse the four
// groups inside each byte.
std::uint64_t reverse_pairs(std::uint64_t x) {
    x = __builtin_bswap64(x);
    x = ((x & 0x0303030303030303ull) << 6) | ((x & 0x0c0c0c0c0c0c0c0cull) << 2) |
        ((x & 0x3030303030303030ull) >> 2) | ((x & 0xc0c0c0c0c0c0c0c0ull) >> 6);
    return x;
}

std::uint64_t lex_key_of(std::uint64_t packed, int n) {
    if (n == 0) return 0;
    return reverse_pairs(packed) >> (64 - 2 * n);
}

std::uint64_t packed_of_lex(std::uint64_t key, int n) {
    return lex_key_of(key, n);  // digit reversal is an involution
}

void require_same_dim(const GroupVector& a, const GroupVector& b) {
    if (a.dim() != b.dim())
        throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()));
}

}  // namespace

GroupVector::GroupVector(int n, std::uint64_t packed) : n_(n), bits_(packed) {
    if (n < 1 || n > kMaxDim)
        throw DimensionError("dimension " + std::to_string(n) +
                             " outside [1, " + std::to_string(kMaxDim) + "]");
    if (n < kMaxDim && (packed >> (2 * n)) != 0)
        throw DomainError("packed value has bits beyond coordinate " +
                          std::to_string(n));
}

GroupVector GroupVector::from_digits(std::span<const int> digits) {
    if (digits.size() > kMaxDim)
        throw DimensionError("dimension " + std::to_string(digits.size()) +
                             " over the cap " + std::to_string(kMaxDim));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] > 3)
            throw DomainError("digit " + std::to_string(digits[i]) +
                              " outside {0,1,2,3}");
        bits |= static_cast<std::uint64_t>(digits[i]) << (2 * i);
    }
    return GroupVector(static_cast<int>(digits.size()), bits);
}

GroupVector GroupVector::from_string(std::string_view s) {
    if (s.size() > kMaxDim)
        throw DimensionError("dimension " + std::to_string(s.size()) +
                             " over the cap " + std::to_string(kMaxDim));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '3')
            throw DomainError(std::string("invalid digit character '") + s[i] +
                              "'");
        bits |= static_cast<std::uint64_t>(s[i] - '0') << (2 * i);
    }
    return GroupVector(static_cast<int>(s.size()), bits);
}

GroupVector GroupVector::add(const GroupVector& o) const {
    require_same_dim(*this, o);
    std::uint64_t a = bits_, b = o.bits_;
    // carry from the low bit of each digit, no carry ever leaves a digit
    return GroupVector(n_, a ^ b ^ ((a & b & kLo) << 1));
}

GroupVector GroupVector::negated() const {
    return GroupVector(n_, bits_ ^ ((bits_ & kLo) << 1));
}

GroupVector GroupVector::sub(const GroupVector& o) const {
    return add(o.negated());
}

GroupVector GroupVector::doubled() const {
    return GroupVector(n_, (bits_ & kLo) << 1);
}

std::uint32_t GroupVector::torsion_mask() const {
    if (!in_two_torsion())
        throw DomainError("element " + str() + " not in the 2-torsion subgroup");
    std::uint32_t mask = 0;
    for (int i = 0; i < n_; ++i)
        mask |= static_cast<std::uint32_t>((bits_ >> (2 * i + 1)) & 1u) << i;
    return mask;
}

std::uint32_t GroupVector::binary_mask() const {
    if (!is_binary())
        throw DomainError("element " + str() + " has a digit outside {0,1}");
    std::uint32_t mask = 0;
    for (int i = 0; i < n_; ++i)
        mask |= static_cast<std::uint32_t>((bits_ >> (2 * i)) & 1u) << i;
    return mask;
}

GroupVector GroupVector::from_torsion_mask(int n, std::uint32_t mask) {
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) bits |= std::uint64_t(2) << (2 * i);
    return GroupVector(n, bits);
}

GroupVector GroupVector::from_binary_mask(int n, std::uint32_t mask) {
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) bits |= std::uint64_t(1) << (2 * i);
    return GroupVector(n, bits);
}

GroupVector GroupVector::concat(const GroupVector& o) const {
    int n = n_ + o.n_;
    if (n > kMaxDim)
        throw DimensionError("concatenated dimension " + std::to_string(n) +
                             " over the cap " + std::to_string(kMaxDim));
    return GroupVector(n, bits_ | (o.bits_ << (2 * n_)));
}

std::string GroupVector::str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) s[i] = static_cast<char>('0' + digit(i));
    return s;
}

std::uint64_t GroupVector::lex_key() const { return lex_key_of(bits_, n_); }

bool lex_less(const GroupVector& a, const GroupVector& b) {
    require_same_dim(a, b);
    return a.lex_key() < b.lex_key();
}

PointSet::PointSet(int n, bool binary) : n_(n), binary_(binary) {
    if (n < 0 || n > GroupVector::kMaxDim)
        throw DimensionError("dimension " + std::to_string(n) +
                             " outside [0, " +
                             std::to_string(GroupVector::kMaxDim) + "]");
}

PointSet PointSet::from_packed(int n, std::vector<std::uint64_t> elems,
                               bool binary) {
    PointSet s(n, binary);
    for (auto& e : elems) {
        if (n < GroupVector::kMaxDim && (e >> (2 * n)) != 0)
            throw DomainError("packed value has bits beyond coordinate " +
                              std::to_string(n));
        e = lex_key_of(e, n);
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.lex_ = std::move(elems);
    return s;
}

PointSet PointSet::from_vectors(int n, std::span<const GroupVector> elems,
                                bool binary) {
    std::vector<std::uint64_t> packed;
    packed.reserve(elems.size());
    for (const auto& g : elems) {
        if (g.dim() != n)
            throw DimensionError("element " + g.str() + " has dimension " +
                                 std::to_string(g.dim()) + ", expected " +
                                 std::to_string(n));
        packed.push_back(g.packed());
    }
    return from_packed(n, std::move(packed), binary);
}

void PointSet::insert(const GroupVector& g) {
    if (g.dim() != n_)
        throw DimensionError("element " + g.str() + " has dimension " +
                             std::to_string(g.dim()) + ", expected " +
                             std::to_string(n_));
    std::uint64_t key = g.lex_key();
    auto it = std::lower_bound(lex_.begin(), lex_.end(), key);
    if (it == lex_.end() || *it != key) lex_.insert(it, key);
}

bool PointSet::contains(const GroupVector& g) const {
    if (g.dim() != n_) return false;
    std::uint64_t key = g.lex_key();
    auto it = std::lower_bound(lex_.begin(), lex_.end(), key);
    return it != lex_.end() && *it == key;
}

GroupVector PointSet::at(std::size_t i) const {
    return GroupVector(n_, packed_of_lex(lex_[i], n_));
}

std::vector<GroupVector> PointSet::vectors() const {
    std::vector<GroupVector> out;
    out.reserve(lex_.size());
    for (std::size_t i = 0; i < lex_.size(); ++i) out.push_back(at(i));
    return out;
}

std::vector<std::uint32_t> PointSet::binary_masks() const {
    if (!binary_) throw DomainError("binary_masks on a non-binary point set");
    std::vector<std::uint32_t> out;
    out.reserve(lex_.size());
    for (std::size_t i = 0; i < lex_.size(); ++i)
        out.push_back(at(i).binary_mask());
    return out;
}

ProgressionCheck is_progression_free(const PointSet& a) {
    // map from doubled value to the elements that double to it; a doubled
    // value never pins down c uniquely (2c = 2c' for c' in c + 2-torsion),
    // so every bucket entry gets the explicit distinctness filter
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> doubles;
    const std::size_t k = a.size();
    for (std::size_t i = 0; i < k; ++i)
        doubles[a.at(i).doubled().packed()].push_back(i);
    for (std::size_t i = 0; i < k; ++i) {
        GroupVector x = a.at(i);
        for (std::size_t j = i + 1; j < k; ++j) {
            GroupVector y = a.at(j);
            auto it = doubles.find(x.add(y).packed());
            if (it == doubles.end()) continue;
            for (std::size_t ci : it->second) {
                if (ci == i || ci == j) continue;
                return ProgressionCheck{false,
                                        ProgressionTriple{x, y, a.at(ci)}};
            }
        }
    }
    return ProgressionCheck{true, std::nullopt};
}

CosetDecomposition coset_decompose(const PointSet& a) {
    CosetDecomposition out;
    out.n = a.dim();
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> groups;
    for (std::size_t i = 0; i < a.size(); ++i) {
        GroupVector g = a.at(i);
        groups[g.mod2_key()].push_back(g.packed());
    }
    std::vector<std::uint64_t> keys;
    keys.reserve(groups.size());
    for (const auto& [key, _] : groups) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](std::uint64_t x, std::uint64_t y) {
        return lex_key_of(x, a.dim()) < lex_key_of(y, a.dim());
    });
    for (std::uint64_t key : keys) {
        CosetDecomposition::Part part;
        part.representative = GroupVector(a.dim(), key);
        part.elements = PointSet::from_packed(a.dim(), std::move(groups[key]));
        out.parts.push_back(std::move(part));
    }
    return out;
}

PointSet two_dot(const PointSet& s) {
    std::vector<std::uint64_t> sums;
    sums.reserve(s.size() * (s.size() + 1) / 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        GroupVector x = s.at(i);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            sums.push_back(x.add(s.at(j)).packed());
    }
    return PointSet::from_packed(s.dim(), std::move(sums));
}

PointSet two_star(const PointSet& s) {
    std::vector<std::uint64_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out.push_back(s.at(i).doubled().packed());
    return PointSet::from_packed(s.dim(), std::move(out));
}

PointSet tensor_power(const PointSet& a, int k, std::uint64_t size_cap) {
    if (k < 1) throw DomainError("tensor power needs k >= 1");
    if (a.dim() * k > GroupVector::kMaxDim)
        throw DimensionError("tensor dimension " + std::to_string(a.dim() * k) +
                             " over the cap " +
                             std::to_string(GroupVector::kMaxDim));
    std::uint64_t total = 1;
    for (int i = 0; i < k && a.size() > 0; ++i) {
        if (total > size_cap / a.size())
            throw CapacityError("tensor power size |A|^" + std::to_string(k) +
                                " exceeds the cap " + std::to_string(size_cap));
        total *= a.size();
    }
    std::vector<std::uint64_t> cur{0};  // packed prefixes
    int prefix_dim = 0;
    for (int step = 0; step < k; ++step) {
        std::vector<std::uint64_t> next;
        next.reserve(cur.size() * a.size());
        for (std::uint64_t prefix : cur)
            for (std::size_t i = 0; i < a.size(); ++i)
                next.push_back(prefix | (a.at(i).packed() << (2 * prefix_dim)));
        cur = std::move(next);
        prefix_dim += a.dim();
    }
    return PointSet::from_packed(a.dim() * k, std::move(cur));
}

PointSet translate(const PointSet& a, const GroupVector& t) {
    std::vector<std::uint64_t> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(a.at(i).add(t).packed());
    return PointSet::from_packed(a.dim(), std::move(out));
}

PointSet torsion_to_binary(const PointSet& s) {
    std::vector<std::uint64_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        GroupVector g = s.at(i);
        if (!g.in_two_torsion())
            throw DomainError("element " + g.str() +
                              " not in the 2-torsion subgroup");
        out.push_back(g.packed() >> 1);
    }
    return PointSet::from_packed(s.dim(), std::move(out), true);
}

}  // namespace z4ap
