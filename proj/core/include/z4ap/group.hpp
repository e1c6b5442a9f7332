#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "z4ap/error.hpp"

namespace z4ap {

/// Element of Z_4^n with n <= 32. Coordinate i (0-based) lives in bits
/// 2i..2i+1 of a single word, so coordinatewise mod-4 arithmetic is done
/// word-parallel. Coordinate 0 is the leftmost digit in string form.
class GroupVector {
public:
    static constexpr int kMaxDim = 32;

    GroupVector() = default;
    GroupVector(int n, std::uint64_t packed);

    static GroupVector zero(int n) { return GroupVector(n, 0); }
    static GroupVector from_digits(std::span<const int> digits);
    static GroupVector from_string(std::string_view s);

    int dim() const { return n_; }
    std::uint64_t packed() const { return bits_; }
    int digit(int i) const { return static_cast<int>((bits_ >> (2 * i)) & 3u); }

    GroupVector add(const GroupVector& o) const;
    GroupVector sub(const GroupVector& o) const;
    GroupVector negated() const;
    /// g -> 2g; lands in the 2-torsion subgroup (digits 0/2).
    GroupVector doubled() const;

    /// Coordinatewise mod-2 reduction, one bit per coordinate kept in the
    /// low bit of each digit slot. Equal keys == same 2-torsion coset.
    std::uint64_t mod2_key() const { return bits_ & kLo; }
    /// All digits in {0,2}, i.e. membership in the 2-torsion subgroup.
    bool in_two_torsion() const { return (bits_ & kLo) == 0; }
    /// All digits in {0,1}.
    bool is_binary() const { return (bits_ & (kLo << 1)) == 0; }

    /// Digit/2 per coordinate as a bit mask; requires in_two_torsion().
    std::uint32_t torsion_mask() const;
    /// Digit per coordinate as a bit mask; requires is_binary().
    std::uint32_t binary_mask() const;
    /// Bit b -> digit 2b.
    static GroupVector from_torsion_mask(int n, std::uint32_t mask);
    /// Bit b -> digit b.
    static GroupVector from_binary_mask(int n, std::uint32_t mask);

    GroupVector concat(const GroupVector& o) const;

    std::string str() const;

    /// Packed word with digit order reversed, so that numeric comparison of
    /// lex_key values is lexicographic comparison of digit strings.
    std::uint64_t lex_key() const;

    friend bool operator==(const GroupVector&, const GroupVector&) = default;

private:
    static constexpr std::uint64_t kLo = 0x5555555555555555ull;
    int n_ = 0;
    std::uint64_t bits_ = 0;
};

/// Lexicographic order on digit strings (coordinate 0 most significant).
/// The canonical element order everywhere: files, iteration, search.
bool lex_less(const GroupVector& a, const GroupVector& b);

/// Finite subset of Z_4^n, deduplicated, stored in lexicographic order.
/// binary_flag marks sets whose elements are 0/1 vectors standing for
/// points of F_2^n (outputs of the coset-to-binary encodings).
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int n, bool binary = false);

    static PointSet from_packed(int n, std::vector<std::uint64_t> elems,
                                bool binary = false);
    static PointSet from_vectors(int n, std::span<const GroupVector> elems,
                                 bool binary = false);

    int dim() const { return n_; }
    bool binary_flag() const { return binary_; }
    std::size_t size() const { return lex_.size(); }
    bool empty() const { return lex_.empty(); }

    void insert(const GroupVector& g);
    bool contains(const GroupVector& g) const;

    /// Element i in lexicographic order.
    GroupVector at(std::size_t i) const;
    /// Packed words, sorted by lex_key.
    const std::vector<std::uint64_t>& lex_keys() const { return lex_; }
    std::vector<GroupVector> vectors() const;
    /// One mask per element; requires binary_flag().
    std::vector<std::uint32_t> binary_masks() const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    int n_ = 0;
    bool binary_ = false;
    std::vector<std::uint64_t> lex_;  // lex_key values, sorted ascending
};

struct ProgressionTriple {
    GroupVector a, b, c;
};

struct ProgressionCheck {
    bool progression_free = true;
    std::optional<ProgressionTriple> witness;
};

/// Decides whether the set has pairwise-distinct a, b, c with a + b = 2c.
/// Candidates c are read off a precomputed map from doubled values to
/// elements, then filtered for distinctness explicitly; several c can share
/// one doubled value, so the map is multi-valued.
ProgressionCheck is_progression_free(const PointSet& a);

struct CosetDecomposition {
    struct Part {
        GroupVector representative;  // 0/1 vector, the mod-2 reduction
        PointSet elements;
    };
    int n = 0;
    std::vector<Part> parts;  // sorted by representative, lex order
};

/// Splits A by cosets of the 2-torsion subgroup.
CosetDecomposition coset_decompose(const PointSet& a);

/// {a + b : a, b distinct in S}.
PointSet two_dot(const PointSet& s);
/// {2a : a in S}.
PointSet two_star(const PointSet& s);
/// A^k under coordinate concatenation. Refuses when |A|^k exceeds size_cap
/// or the concatenated dimension exceeds the word cap.
PointSet tensor_power(const PointSet& a, int k,
                      std::uint64_t size_cap = 2'000'000);
/// {a + t : a in A}.
PointSet translate(const PointSet& a, const GroupVector& t);
/// Reads a subset of the 2-torsion subgroup as a binary point set
/// (digit 2 -> 1); rejects elements outside the subgroup.
PointSet torsion_to_binary(const PointSet& s);

}  // namespace z4ap
