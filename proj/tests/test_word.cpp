#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "test_util.hpp"
#include "verba/word.hpp"

using namespace verba;
using namespace verba::testutil;

namespace {

// Independent decomposition oracle: try every divisor period of the cyclic
// core and certify it by brute reassembly through plain multiplications.
HypDecomposition oracle_decompose(const Word& w) {
  auto [core, f] = cyclic_reduce(w);
  REQUIRE(core.size() >= 2);
  for (std::size_t d = 1; d <= core.size(); ++d) {
    if (core.size() % d != 0) continue;
    std::vector<Syllable> head(core.syllables().begin(), core.syllables().begin() + std::ptrdiff_t(d));
    Word A = Word::trusted(w.sig(), std::move(head));
    Word acc = Word::identity(w.sig());
    for (std::size_t r = 0; r < core.size() / d; ++r) acc = multiply(acc, A);
    if (acc == core) return HypDecomposition{A, std::int64_t(core.size() / d), f};
  }
  FAIL("no period found");
  return {};
}

}  // namespace

TEST_CASE("cyclic factor groups") {
  FactorGroup z2 = FactorGroup::cyclic(2);
  CHECK(z2.mult(1, 1) == 0);
  FactorGroup z5 = FactorGroup::cyclic(5);
  CHECK(z5.mult(2, 3) == 0);
  CHECK(z5.inv(2) == 3);
  CHECK_THROWS_AS(FactorGroup::cyclic(1), Error);
  try {
    FactorGroup::cyclic(1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidOrder);
  }
}

TEST_CASE("table validation") {
  CHECK(FactorGroup::from_table({{0, 1}, {1, 0}}).order() == 2);

  // Klein four-group: every element is its own inverse.
  FactorGroup v4 = FactorGroup::from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
  for (int g = 0; g < 4; ++g) CHECK(v4.inv(Elt(g)) == g);

  try {
    FactorGroup::from_table({{0, 1}, {1, 1}});
    FAIL("expected NoInverse");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoInverse);
  }

  // Exhaustive axiom sweep for every constructed factor.
  for (const FactorGroup& g : {FactorGroup::cyclic(5), v4}) {
    for (int a = 0; a < g.order(); ++a) {
      CHECK(g.mult(Elt(a), 0) == a);
      CHECK(g.mult(0, Elt(a)) == a);
      CHECK(g.mult(Elt(a), g.inv(Elt(a))) == 0);
      for (int b = 0; b < g.order(); ++b)
        for (int c = 0; c < g.order(); ++c)
          CHECK(g.mult(g.mult(Elt(a), Elt(b)), Elt(c)) == g.mult(Elt(a), g.mult(Elt(b), Elt(c))));
    }
  }
}

TEST_CASE("table identity re-indexing") {
  // Z3 written with its identity at index 1; element 0 is always identity
  // after construction.
  FactorGroup g = FactorGroup::from_table({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  CHECK(g.order() == 3);
  for (int a = 0; a < 3; ++a) {
    CHECK(g.mult(0, Elt(a)) == a);
    CHECK(g.mult(Elt(a), 0) == a);
  }
  CHECK(g.inv(1) == 2);
  CHECK(g.mult(1, 1) == 2);
}

TEST_CASE("conjugacy inside a factor") {
  FactorGroup z5 = FactorGroup::cyclic(5);
  CHECK(z5.conjugator(2, 2) == Elt(0));
  CHECK(!z5.conjugator(2, 3).has_value());

  // S3 as a table: elements 0=e, 1=(12), 2=(13), 3=(23), 4=(123), 5=(132).
  FactorGroup s3 = FactorGroup::from_table({
      {0, 1, 2, 3, 4, 5},
      {1, 0, 4, 5, 2, 3},
      {2, 5, 0, 4, 3, 1},
      {3, 4, 5, 0, 1, 2},
      {4, 3, 1, 2, 5, 0},
      {5, 2, 3, 1, 0, 4},
  });
  auto t = s3.conjugator(1, 2);
  REQUIRE(t.has_value());
  CHECK(s3.mult(s3.mult(s3.inv(*t), 1), *t) == 2);
}

TEST_CASE("reduce merges and cancels") {
  auto sig = z5z2();
  std::vector<Syllable> raw{{1, 1}, {0, 4}, {0, 3}, {1, 1}};
  Word w = Word::reduce(sig, raw);
  CHECK(format_word(w) == "b a^2 b");

  CHECK(Word::reduce(sig, {}).empty());

  std::vector<Syllable> cascade{{0, 1}, {1, 1}, {1, 1}, {0, 4}};
  CHECK(Word::reduce(sig, cascade).empty());
}

TEST_CASE("group arithmetic examples") {
  auto sig3 = z2z2z2();
  Word ab = W(sig3, "a b");
  Word bc = W(sig3, "b c");
  CHECK(format_word(commutator(ab, bc)) == "b a c b a c");

  CHECK(multiply(ab, invert(ab)).empty());

  auto sig22 = parse_group_spec("Z2*Z2");
  Word x = W(sig22, "a b");
  CHECK(format_word(power(x, 3)) == "a b a b a b");
  CHECK(format_word(power(x, -2)) == "b a b a");
}

TEST_CASE("lengths and cyclic reduction") {
  auto sig3 = z2z2z2();
  Word w = W(sig3, "a b c b a");
  auto [core, f] = cyclic_reduce(w);
  CHECK(format_word(core) == "c");
  CHECK(format_word(f) == "b a");
  CHECK(multiply(multiply(invert(f), core), f) == w);

  CHECK(central_length(W(sig3, "b a c b a c")) == 6);
  CHECK(length(Word::identity(sig3)) == 0);
  CHECK(central_length(Word::identity(sig3)) == 0);

  CHECK(is_cyclically_reduced(Word::identity(sig3)));
  CHECK(is_cyclically_reduced(W(sig3, "a")));
  CHECK(!is_cyclically_reduced(w));
}

TEST_CASE("hyperbolicity") {
  auto sig3 = z2z2z2();
  CHECK(!is_hyperbolic(W(sig3, "a b c b a")));
  CHECK(is_hyperbolic(W(sig3, "b a c b a c")));
  CHECK(!is_hyperbolic(Word::identity(sig3)));
}

TEST_CASE("hyperbolic decomposition") {
  auto sig3 = z2z2z2();

  Word w = W(sig3, "b a c a c a c b");
  HypDecomposition d = hyperbolic_decompose(w);
  CHECK(format_word(d.A) == "a c");
  CHECK(d.k == 3);
  CHECK(format_word(d.f) == "b");
  CHECK(length(w) == d.k * length(d.A) + 2 * length(d.f));
  CHECK(reassemble(d) == w);

  Word v = W(sig3, "b a c b a c");
  HypDecomposition dd = hyperbolic_decompose(v);
  HypDecomposition od = oracle_decompose(v);
  CHECK(dd.A == od.A);
  CHECK(dd.k == od.k);
  CHECK(format_word(dd.A) == "b a c");
  CHECK(dd.k == 2);
  CHECK(dd.f.empty());
  CHECK(radical_length(v) == 3);

  auto sig22 = parse_group_spec("Z2*Z2");
  HypDecomposition d3 = hyperbolic_decompose(W(sig22, "a b a b a b"));
  CHECK(format_word(d3.A) == "a b");
  CHECK(d3.k == 3);

  CHECK_THROWS_AS(hyperbolic_decompose(W(sig3, "a")), Error);
}

TEST_CASE("merge-aware decomposition seam") {
  auto sig = z5z2();
  // a^2 b a = f^-1 . A o f with a merged trailing syllable.
  Word w = W(sig, "a^2 b a");
  HypDecomposition d = hyperbolic_decompose(w);
  CHECK(reassemble(d) == w);
  CHECK(length(w) == d.k * length(d.A) + 2 * length(d.f) - 1);
}

TEST_CASE("simplicity") {
  auto sig3 = z2z2z2();
  CHECK(is_simple(W(sig3, "b a c")));
  CHECK(!is_simple(W(sig3, "b a c b a c")));
  CHECK(!is_simple(W(sig3, "a")));
  CHECK(!is_simple(W(sig3, "a b c b a")));
  auto sig = z5z2();
  CHECK(is_simple(W(sig, "a b")));
}

TEST_CASE("roots") {
  auto sig3 = z2z2z2();
  Word w = W(sig3, "b a c a c a c b");
  auto r = root(w, 3);
  REQUIRE(r.has_value());
  CHECK(format_word(*r) == "b a c b");
  CHECK(power(*r, 3) == w);

  Word v = W(sig3, "b a c b a c");
  auto r2 = root(v, 2);
  REQUIRE(r2.has_value());
  CHECK(format_word(*r2) == "b a c");
  CHECK(!root(v, 4).has_value());
}

TEST_CASE("centralizer generator") {
  auto sig3 = z2z2z2();
  for (const char* text : {"b a c b a c", "b a c a c a c b"}) {
    Word w = W(sig3, text);
    Word g = centralizer_generator(w);
    CHECK(commutator(w, g).empty());
    // Oracle: every short word commuting with w is a power of g.
    for (const Word& u : all_words(sig3, 4)) {
      if (!commutator(w, u).empty()) continue;
      bool found = false;
      for (int j = -4; j <= 4 && !found; ++j) found = power(g, j) == u;
      CHECK(found);
    }
  }
  auto sig22 = parse_group_spec("Z2*Z2");
  CHECK(format_word(centralizer_generator(W(sig22, "a b a b a b"))) == "a b");
  CHECK(format_word(centralizer_generator(W(z2z2z2(), "b a c a c a c b"))) == "b a c b");
}

TEST_CASE("conjugacy") {
  auto sig3 = z2z2z2();
  Word u = W(sig3, "b a c b a c");
  Word v = W(sig3, "a c b a c b");
  auto g = are_conjugate(u, v);
  REQUIRE(g.has_value());
  CHECK(format_word(*g) == "b");
  CHECK(conjugate(u, *g) == v);

  // Elliptic pair from the cyclic_reduce example; witness satisfies g^-1 u g = v.
  Word e1 = W(sig3, "a b c b a");
  Word e2 = W(sig3, "c");
  auto ge = are_conjugate(e1, e2);
  REQUIRE(ge.has_value());
  CHECK(conjugate(e1, *ge) == e2);
  CHECK(format_word(*ge) == "a b");

  auto sig = z5z2();
  auto gg = are_conjugate(W(sig, "a b"), W(sig, "b a"));
  REQUIRE(gg.has_value());
  CHECK(format_word(*gg) == "a");
  CHECK(conjugate(W(sig, "a b"), *gg) == W(sig, "b a"));

  CHECK(!are_conjugate(W(sig, "a"), W(sig, "b")).has_value());
  CHECK(!are_conjugate(W(sig, "a"), Word::identity(sig)).has_value());
  CHECK(are_conjugate(Word::identity(sig), Word::identity(sig)).has_value());
}

TEST_CASE("word calculus invariants (randomized)") {
  std::mt19937_64 rng(20240817);
  for (auto sig : {z5z2(), z2z2z2()}) {
    for (int trial = 0; trial < 400; ++trial) {
      Word x = random_word(sig, rng, int(rng() % 9));
      Word y = random_word(sig, rng, int(rng() % 9));
      Word z = random_word(sig, rng, int(rng() % 9));

      CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
      CHECK(multiply(x, invert(x)).empty());

      // reduce is idempotent and multiply agrees with reduce of concatenation.
      Word xy = multiply(x, y);
      std::vector<Syllable> cat(x.syllables().begin(), x.syllables().end());
      cat.insert(cat.end(), y.syllables().begin(), y.syllables().end());
      CHECK(Word::reduce(sig, cat) == xy);
      std::vector<Syllable> again(xy.syllables().begin(), xy.syllables().end());
      CHECK(Word::reduce(sig, again) == xy);
    }

    for (int trial = 0; trial < 150; ++trial) {
      Word w = random_hyperbolic(sig, rng, 8);
      std::int64_t k = 1 + std::int64_t(rng() % 6);
      CHECK(central_length(power(w, k)) == k * central_length(w));
      CHECK(radical_length(power(w, k)) == radical_length(w));
      CHECK(radical_length(w) <= central_length(w));
      CHECK(central_length(w) <= length(w));
      CHECK(length(power(w, k)) <= k * length(w));

      HypDecomposition d = hyperbolic_decompose(w);
      CHECK(reassemble(d) == w);
      CHECK((radical_length(w) == central_length(w)) == (d.k == 1));
      std::int64_t drop = length(w) - d.k * length(d.A) - 2 * length(d.f);
      CHECK((drop == 0 || drop == -1));

      Word g = random_word(sig, rng, int(rng() % 6));
      CHECK(central_length(conjugate(w, g)) == central_length(w));
      CHECK(radical_length(conjugate(w, g)) == radical_length(w));

      auto rt = root(power(w, k), k);
      REQUIRE(rt.has_value());
      CHECK(*rt == w);
    }
  }
}

TEST_CASE("word literal round trip") {
  auto sig = z5z2();
  for (const char* text : {"1", "a", "b a^2 b", "a^4 b a"}) {
    Word w = parse_word(sig, text);
    CHECK(parse_word(sig, format_word(w)) == w);
  }
  CHECK(parse_word(sig, "0:2 1:1") == parse_word(sig, "a^2 b"));
  CHECK_THROWS_AS(parse_word(sig, "q"), Error);
  // Identity letters are allowed in raw input and vanish.
  CHECK(parse_word(sig, "a^0 b") == parse_word(sig, "b"));
}

TEST_CASE("signature mismatch is detected") {
  auto s1 = z5z2();
  auto s2 = z2z2z2();
  CHECK_THROWS_AS(multiply(W(s1, "a"), W(s2, "c")), Error);
  // Equal-by-value signatures are compatible even as distinct objects.
  auto s3 = parse_group_spec("Z5*Z2");
  CHECK(multiply(W(s1, "a"), W(s3, "a")) == W(s1, "a^2"));
}
