#include <doctest.h>

#include "test_util.hpp"
#include "verba/periodic.hpp"

using namespace verba;
using namespace verba::testutil;

TEST_CASE("subword search") {
  auto sig = z5z2();
  CHECK(is_subword(W(sig, "a^2 b"), W(sig, "b a^2 b")) == 1);
  CHECK(is_subword(Word::identity(sig), W(sig, "b a^2 b")) == 0);
  auto sig3 = z2z2z2();
  CHECK(!is_subword(W(sig3, "a c"), W(sig3, "b c b")).has_value());
  // Exact syllable equality: a^2 is not a subword of a^3 b.
  CHECK(!is_subword(W(sig, "a^2"), W(sig, "a^3 b")).has_value());
}

TEST_CASE("periodicity") {
  auto sig3 = z2z2z2();
  CHECK(is_periodic(W(sig3, "c b a"), W(sig3, "b a c")));
  CHECK(is_periodic(W(sig3, "b a c"), W(sig3, "b a c")));
  CHECK(!is_periodic(W(sig3, "c a"), W(sig3, "a b")));
  CHECK_THROWS_AS(is_periodic(W(sig3, "a"), W(sig3, "b a c b a c")), Error);
}

TEST_CASE("fine-wilf split") {
  auto sig3 = z2z2z2();
  Word bac = W(sig3, "b a c");
  SUBCASE("equal words") {
    Word U = W(sig3, "b a c b a");
    PeriodSplit s = fine_wilf_split(bac, bac, U);
    CHECK(s.C1.empty());
    CHECK(s.C2 == bac);
    CHECK(s.m1 == 1);
    CHECK(s.m2 == 1);
  }
  SUBCASE("power pair") {
    auto sig22 = parse_group_spec("Z2*Z2");
    Word w1 = W(sig22, "a b a b");
    Word w2 = W(sig22, "a b");
    Word U = W(sig22, "a b a b a b");
    PeriodSplit s = fine_wilf_split(w1, w2, U);
    CHECK(s.C1.empty());
    CHECK(s.C2 == w2);
    CHECK(s.m1 == 2);
    CHECK(s.m2 == 1);
    // The defining identities of the split.
    CHECK(power(multiply(s.C1, s.C2), s.m1) == w1);
    CHECK(power(multiply(s.C2, s.C1), s.m2) == w2);
  }
  SUBCASE("too short") {
    Word U = W(sig3, "b a");
    CHECK_THROWS_AS(fine_wilf_split(bac, bac, U), Error);
    try {
      fine_wilf_split(bac, bac, U);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PreconditionTooShort);
    }
  }
  SUBCASE("not common") {
    Word w2 = W(sig3, "c a b");  // not commensurable with bac
    Word U = W(sig3, "b a c b a");
    CHECK_THROWS_AS(fine_wilf_split(bac, w2, U), Error);
  }
}

TEST_CASE("P3 involutive split") {
  auto sig22 = parse_group_spec("Z2*Z2");
  PeriodSplit s = p3_inverse_periodic(W(sig22, "a b"));
  CHECK(format_word(s.C1) == "a");
  CHECK(format_word(s.C2) == "b");

  auto sig = z5z2();
  CHECK_THROWS_AS(p3_inverse_periodic(W(sig, "a b")), Error);
  auto sig3 = z2z2z2();
  CHECK_THROWS_AS(p3_inverse_periodic(W(sig3, "b a c")), Error);

  // Uniqueness: the returned split is the only valid cut.
  Word B = W(sig22, "a b");
  Word Binv = invert(B);
  int valid = 0;
  for (std::size_t r = 0; r <= B.size(); ++r) {
    std::vector<Syllable> c1(B.syllables().begin(), B.syllables().begin() + std::ptrdiff_t(r));
    std::vector<Syllable> c2(B.syllables().begin() + std::ptrdiff_t(r), B.syllables().end());
    Word C1 = Word::trusted(sig22, std::move(c1));
    Word C2 = Word::trusted(sig22, std::move(c2));
    if (multiply(C2, C1) == Binv && multiply(C1, C1).empty() && multiply(C2, C2).empty()) ++valid;
  }
  CHECK(valid == 1);
}

TEST_CASE("P4 double-periodic split") {
  auto sig3 = z2z2z2();
  Word bac = W(sig3, "b a c");
  SUBCASE("equal periods") {
    Word U = W(sig3, "b a c b a c");
    PeriodSplit s = p4_double_periodic(bac, bac, U);
    CHECK(multiply(s.C1, s.C2) == bac);
    CHECK(multiply(s.C2, s.C1) == bac);
    CHECK((s.C1.empty() || s.C2.empty()));
  }
  SUBCASE("rotated periods") {
    Word acb = W(sig3, "a c b");
    Word U = W(sig3, "b a c b a c");
    PeriodSplit s = p4_double_periodic(bac, acb, U);
    CHECK(format_word(s.C1) == "b");
    CHECK(format_word(s.C2) == "a c");
    CHECK(multiply(s.C1, s.C2) == bac);
    CHECK(multiply(s.C2, s.C1) == acb);
  }
  SUBCASE("too short") {
    Word U = W(sig3, "b a c b");
    CHECK_THROWS_AS(p4_double_periodic(bac, W(sig3, "a c b"), U), Error);
  }
  SUBCASE("same prefix forces equality") {
    // If U starts with both A and B (and the preconditions hold) then A == B.
    auto sig22 = parse_group_spec("Z2*Z2");
    Word A = W(sig22, "a b");
    Word U = W(sig22, "a b a b");
    for (const Word& B : {W(sig22, "a b"), W(sig22, "b a")}) {
      auto pa = period_phase(U, A);
      auto pb = period_phase(U, B);
      if (pa == 0 && pb == 0) CHECK(A == B);
    }
  }
}

TEST_CASE("occurrence grid and inner-power properties of simple words") {
  std::mt19937_64 rng(7);
  auto sig3 = z2z2z2();
  int checked = 0;
  while (checked < 60) {
    Word B = random_word(sig3, rng, 2 + int(rng() % 4));
    if (!is_simple(B)) continue;
    ++checked;
    int k = 2 + int(rng() % 6);
    Word Bk = power(B, k);
    // P1: every occurrence offset of B in B^k is a multiple of |B|.
    auto b = B.syllables();
    auto big = Bk.syllables();
    for (std::size_t off = 0; off + B.size() <= Bk.size(); ++off) {
      bool match = std::equal(b.begin(), b.end(), big.begin() + std::ptrdiff_t(off));
      if (match) CHECK(off % B.size() == 0);
    }
    // P2: if B.U.B occurs in B^k then U is a power of B.
    for (int m = 0; m + 2 <= k; ++m) {
      Word U = power(B, m);
      Word T = multiply(multiply(B, U), B);
      CHECK(is_subword(T, Bk).has_value() == (m + 2 <= k));
    }
  }
}
