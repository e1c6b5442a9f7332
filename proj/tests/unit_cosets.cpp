#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "z4ap/bounds.hpp"
#include "z4ap/cosets.hpp"
#include "z4ap/error.hpp"
#include "z4ap/poly.hpp"

using namespace z4ap;

namespace {

PointSet full_coset(int n, const std::string& base_digits) {
    GroupVector base = GroupVector::from_string(base_digits);
    PointSet out(n);
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        out.insert(base.add(GroupVector::from_torsion_mask(n, m)));
    return out;
}

}  // namespace

TEST_CASE("profiles sort descending and cover the set") {
    std::mt19937_64 rng(81);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 1 + int(rng() % 5);
        PointSet a = z4test::random_subset(n, 0.3, rng);
        CosetProfile prof = coset_profile(a);
        CHECK(prof.n == n);
        CHECK(std::is_sorted(prof.counts.begin(), prof.counts.end(),
                             std::greater<>()));
        std::uint64_t sum = 0;
        for (auto c : prof.counts) {
            CHECK(c > 0);
            sum += c;
        }
        CHECK(sum == a.size());
        CHECK(prof.total == a.size());
        CHECK(prof.counts.size() == coset_decompose(a).parts.size());
    }
    // same coset: (0,0) and (2,2) land together
    PointSet pair(2);
    pair.insert(GroupVector::from_string("00"));
    pair.insert(GroupVector::from_string("22"));
    CosetProfile p2 = coset_profile(pair);
    REQUIRE(p2.counts.size() == 1);
    CHECK(p2.counts[0] == 2);
}

TEST_CASE("pairwise-sum and doubling unions on hand examples") {
    // two singleton cosets: nothing to sum, doubling images survive
    PointSet a(1);
    a.insert(GroupVector::from_string("0"));
    a.insert(GroupVector::from_string("1"));
    auto dec = coset_decompose(a);
    std::vector<GroupVector> reps;
    for (const auto& part : dec.parts) reps.push_back(part.representative);
    BCResult bc = build_B_and_C(a, reps);
    CHECK(bc.b.empty());
    CHECK(bc.b.binary_flag());
    CHECK(bc.c.binary_flag());
    REQUIRE(bc.c.size() == 2);
    CHECK(bc.c.contains(GroupVector::from_string("0")));
    CHECK(bc.c.contains(GroupVector::from_string("1")));
    CHECK(bc.disjoint);

    // one full coset: B covers every translate except the doubling image
    PointSet f = full_coset(3, "123");
    auto fdec = coset_decompose(f);
    REQUIRE(fdec.parts.size() == 1);
    std::vector<GroupVector> frep = {fdec.parts[0].representative};
    BCResult fbc = build_B_and_C(f, frep);
    CHECK(fbc.c.size() == 1);
    CHECK(fbc.b.size() == 7);
    CHECK(fbc.disjoint);
    // C holds exactly the halved digits of 2r, r = 123 -> 2r = 202 -> 101
    CHECK(fbc.c.at(0).str() == "101");
    CHECK(!fbc.b.contains(GroupVector::from_string("101")));

    // a partial selection restricts both unions
    PointSet two(2);
    for (const char* t : {"00", "02", "11", "13"})
        two.insert(GroupVector::from_string(t));
    auto tdec = coset_decompose(two);
    REQUIRE(tdec.parts.size() == 2);
    std::vector<GroupVector> first = {tdec.parts[0].representative};
    BCResult tbc = build_B_and_C(two, first);
    CHECK(tbc.c.size() == 1);
    // {00, 02}: the one distinct pairwise sum is 02, encoded 01
    REQUIRE(tbc.b.size() == 1);
    CHECK(tbc.b.at(0).str() == "01");
}

TEST_CASE("selection validation") {
    PointSet a(1);
    a.insert(GroupVector::from_string("0"));
    std::vector<GroupVector> absent = {GroupVector::from_string("1")};
    CHECK_THROWS_AS(build_B_and_C(a, absent), DomainError);
    std::vector<GroupVector> misfit = {GroupVector::from_string("10")};
    CHECK_THROWS_AS(build_B_and_C(a, misfit), DimensionError);
    // any member of a coset selects it: the lookup reduces mod 2
    PointSet b(1);
    b.insert(GroupVector::from_string("2"));
    std::vector<GroupVector> raw = {GroupVector::from_string("2")};
    BCResult via_member = build_B_and_C(b, raw);
    REQUIRE(via_member.c.size() == 1);
    CHECK(via_member.c.at(0).str() == "0");
}

TEST_CASE("sums and doubles stay disjoint on progression-free sets") {
    std::mt19937_64 rng(82);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 1 + int(rng() % 5);
        PointSet a = z4test::naive_random_maximal(n, rng);
        REQUIRE(is_progression_free(a).progression_free);
        auto dec = coset_decompose(a);
        std::vector<GroupVector> reps;
        for (const auto& part : dec.parts) reps.push_back(part.representative);
        // widest selection
        BCResult bc = build_B_and_C(a, reps);
        CHECK(bc.disjoint);
        // random sub-selections
        for (int sel = 0; sel < 3; ++sel) {
            std::vector<GroupVector> some;
            for (const auto& r : reps)
                if (rng() & 1) some.push_back(r);
            if (some.empty()) continue;
            BCResult sub = build_B_and_C(a, some);
            CHECK(sub.disjoint);
            CHECK(sub.b.size() <= bc.b.size());
            CHECK(sub.c.size() == some.size());
        }
    }
}

TEST_CASE("rich coset reports certify against a float cross-check") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 25; ++rep) {
        int n = 4 + int(rng() % 3);
        PointSet a = z4test::naive_random_maximal(n, rng);
        CosetProfile prof = coset_profile(a);
        for (int k : {5, 10, 16, 22}) {
            Rational eps(k, 100);
            RichCosetReport r = rich_coset_report(a, eps);
            CHECK(r.n == n);
            CHECK(r.eps_value == doctest::Approx(k / 100.0));
            CHECK(r.assertion_holds);  // the proposition, certified
            CHECK(r.precision_bits > 0);
            // independent survival count with a float threshold, skipping
            // entries too close to call in double precision
            double t = n * entropy(0.5 - k / 100.0) + 1.0;
            std::uint64_t above = 0;
            bool borderline = false;
            for (auto c : prof.counts) {
                double lg = std::log2(double(c));
                if (std::abs(lg - t) < 1e-9) borderline = true;
                if (lg > t) ++above;
            }
            if (!borderline) CHECK(r.rich_count == above);
            CHECK(r.vacuous == (r.threshold_log2 > double(n)));
            auto reps = rich_cosets(a, eps);
            CHECK(reps.size() == r.rich_count);
            CHECK(std::is_sorted(reps.begin(), reps.end(), lex_less));
        }
        // richness grows with epsilon: the threshold falls
        std::uint64_t prev = 0;
        for (int k = 1; k <= 24; ++k) {
            RichCosetReport r = rich_coset_report(a, Rational(k, 100));
            CHECK(r.rich_count >= prev);
            prev = r.rich_count;
        }
    }
}

TEST_CASE("rich corner cases") {
    // empty set: nothing rich, assertion certified
    RichCosetReport r0 = rich_coset_report(PointSet(3), Rational(1, 10));
    CHECK(r0.rich_count == 0);
    CHECK(r0.assertion_holds);
    // tiny n: the threshold exceeds the coset capacity 2^n
    RichCosetReport r2 =
        rich_coset_report(full_coset(2, "11"), Rational(1, 10));
    CHECK(r2.vacuous);
    CHECK(r2.rich_count == 0);
    // n = 8, eps = 22/100: capacity 256 beats the threshold near 229.7
    RichCosetReport r8 =
        rich_coset_report(full_coset(8, "11111111"), Rational(22, 100));
    CHECK(!r8.vacuous);
    CHECK(r8.rich_count == 1);
    CHECK(r8.threshold == doctest::Approx(229.67).epsilon(1e-3));
    CHECK(r8.assertion_holds);
    CHECK(r8.bound_log2 == doctest::Approx(8 * entropy(0.44)).epsilon(1e-9));
    // epsilon domain
    CHECK_THROWS_AS(rich_coset_report(PointSet(3), Rational(1, 4)),
                    DomainError);
    CHECK_THROWS_AS(rich_coset_report(PointSet(3), Rational(0)), DomainError);
    CHECK_THROWS_AS(rich_coset_report(PointSet(3), Rational(-1, 10)),
                    DomainError);
}

TEST_CASE("replay walks the expected branch on a rich instance") {
    PointSet a = full_coset(8, "11111111");
    ReplayTrace tr = replay_proposition(a, Rational(22, 100));
    CHECK(tr.n == 8);
    CHECK(tr.ceil_2eps_n == 4);  // ceil(3.52)
    CHECK(tr.d == 4);
    CHECK(!tr.hypothesis_satisfiable);
    CHECK(!tr.contradiction_found);
    CHECK(tr.all_ok);
    std::vector<std::string> names;
    for (const auto& s : tr.steps) {
        names.push_back(s.name);
        CHECK(s.ok);
    }
    // C is a single point, so 255 points pin the degree-4 space to zero and
    // the b-vanishing step has nothing to exhibit
    std::vector<std::string> want = {
        "rich_assertion",       "c_size",
        "disjoint",             "b_in_c_complement",
        "vanishing_poly",       "threshold_exceeds_2m",
        "rich_sizes_exceed_2m", "hypothesis"};
    CHECK(names == want);
    CHECK(tr.steps[4].detail.find("only the zero polynomial") !=
          std::string::npos);
    CHECK(tr.steps.back().detail.find(
              "hypothesis of contradiction not satisfiable") !=
          std::string::npos);
}

TEST_CASE("replay reports vacuous thresholds in one step") {
    PointSet a(2);
    a.insert(GroupVector::from_string("00"));
    a.insert(GroupVector::from_string("01"));
    REQUIRE(is_progression_free(a).progression_free);
    ReplayTrace tr = replay_proposition(a, Rational(1, 10));
    CHECK(tr.all_ok);
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].name == "vacuous");
    CHECK(tr.steps[0].ok);
}

TEST_CASE("replay degree arithmetic is exactly rational") {
    // 2 eps n integral: no ceiling drift
    PointSet s4(4);
    s4.insert(GroupVector::from_string("0000"));
    ReplayTrace t1 = replay_proposition(s4, Rational(1, 8));
    CHECK(t1.ceil_2eps_n == 1);
    CHECK(t1.d == 3);
    PointSet s8 = full_coset(8, "00000000");
    ReplayTrace t2 = replay_proposition(s8, Rational(1, 8));
    CHECK(t2.ceil_2eps_n == 2);
    CHECK(t2.d == 6);
    ReplayTrace t3 = replay_proposition(s8, Rational(2399, 10000));
    // 2 * 0.2399 * 8 = 3.8384
    CHECK(t3.ceil_2eps_n == 4);
    CHECK(t3.d == 4);
}

TEST_CASE("replay rejects invalid inputs") {
    PointSet prog(1);
    for (const char* t : {"0", "1", "2"})
        prog.insert(GroupVector::from_string(t));
    REQUIRE(!is_progression_free(prog).progression_free);
    CHECK_THROWS_AS(replay_proposition(prog, Rational(1, 10)), DomainError);
    PointSet ok(1);
    ok.insert(GroupVector::from_string("0"));
    CHECK_THROWS_AS(replay_proposition(ok, Rational(1, 4)), DomainError);
    CHECK_THROWS_AS(replay_proposition(ok, Rational(0)), DomainError);
    PointSet wide(21);
    wide.insert(GroupVector::zero(21));
    CHECK_THROWS_AS(replay_proposition(wide, Rational(1, 10)), CapacityError);
}

TEST_CASE("polynomials vanishing off C vanish on B") {
    // B avoids C, so any polynomial that kills the complement of C kills B;
    // checked by direct evaluation whenever the dimension count leaves room
    std::mt19937_64 rng(86);
    int exhibited = 0;
    for (int rep = 0; rep < 60; ++rep) {
        int n = 1 + int(rng() % 5);
        PointSet a = z4test::naive_random_maximal(n, rng);
        auto dec = coset_decompose(a);
        std::vector<GroupVector> reps;
        for (const auto& part : dec.parts) reps.push_back(part.representative);
        BCResult bc = build_B_and_C(a, reps);
        REQUIRE(bc.disjoint);
        std::vector<std::uint32_t> cm = bc.c.binary_masks();
        std::sort(cm.begin(), cm.end());
        std::vector<std::uint32_t> cbar;
        for (std::uint32_t x = 0; x < (1u << n); ++x)
            if (!std::binary_search(cm.begin(), cm.end(), x))
                cbar.push_back(x);
        for (int d = 1; d <= n; ++d) {
            auto p = vanishing_poly(cbar, n, d);
            if (!p) continue;
            ++exhibited;
            for (std::uint32_t bm : bc.b.binary_masks())
                CHECK(p->eval_mask(bm) == 0);
        }
    }
    CHECK(exhibited > 0);
}
