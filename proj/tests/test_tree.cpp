#include <doctest.h>

#include "test_util.hpp"
#include "verba/tree.hpp"

using namespace verba;
using namespace verba::testutil;

TEST_CASE("action on vertices") {
  auto sig = z2z3();
  Word one = Word::identity(sig);
  CHECK(act(W(sig, "b"), TreeVertex::coset(one, 0)) == TreeVertex::coset(W(sig, "b"), 0));
  CHECK(act(W(sig, "a"), TreeVertex::coset(W(sig, "a"), 0)) == TreeVertex::coset(one, 0));
  CHECK(act(W(sig, "a b"), TreeVertex::element(one)) == TreeVertex::element(W(sig, "a b")));
}

TEST_CASE("distances: closed form vs BFS") {
  auto sig = z2z3();
  Word one = Word::identity(sig);
  CHECK(tree_distance(TreeVertex::coset(one, 0), TreeVertex::coset(one, 1)) == 2);
  CHECK(tree_distance(TreeVertex::element(one), TreeVertex::element(W(sig, "a b"))) == 4);
  TreeVertex v = TreeVertex::coset(W(sig, "a b^2"), 1);
  CHECK(tree_distance(v, v) == 0);

  std::mt19937_64 rng(11);
  for (auto s : {z2z3(), z2z2z2()}) {
    for (int trial = 0; trial < 120; ++trial) {
      auto rand_vertex = [&] {
        Word w = random_word(s, rng, int(rng() % 4));
        if (rng() % 2) return TreeVertex::element(w);
        return TreeVertex::coset(w, int(rng() % std::uint64_t(s->factor_count())));
      };
      TreeVertex v1 = rand_vertex();
      TreeVertex v2 = rand_vertex();
      auto oracle = bfs_distance(v1, v2, 40);
      REQUIRE(oracle.has_value());
      CHECK(tree_distance(v1, v2) == *oracle);
    }
  }
}

TEST_CASE("bfs ball sizes") {
  auto sig = z2z3();
  TreeVertex center = TreeVertex::element(Word::identity(sig));
  CHECK(bfs_ball(center, 0).size() == 1);
  CHECK(bfs_ball(center, 1).size() == 3);
  CHECK(bfs_ball(center, 2).size() == 6);
  CHECK_THROWS_AS(bfs_ball(center, 30, 100), Error);
}

TEST_CASE("axis structure") {
  auto sig = z2z3();
  Word h = W(sig, "a b");
  AxisSegment seg = axis(h, 1);
  REQUIRE(seg.vertices.size() >= 3);
  for (std::size_t i = 1; i < seg.vertices.size(); ++i) {
    CHECK(tree_distance(seg.vertices[i - 1], seg.vertices[i]) == 1);
    CHECK(seg.vertices[i - 1].is_coset != seg.vertices[i].is_coset);
  }
  // One fundamental period spans 2|h|_c edges.
  AxisSegment period = axis(h, 0);
  CHECK(std::int64_t(period.vertices.size()) - 1 == 2 * central_length(h));

  // h shifts the line by one period: act(h, v_k) = v_{k+1}.
  std::size_t period_len = 2 * std::size_t(central_length(h));
  for (std::size_t i = 0; i + period_len < seg.vertices.size(); ++i)
    CHECK(act(h, seg.vertices[i]) == seg.vertices[i + period_len]);

  CHECK_THROWS_AS(axis(W(sig, "a"), 1), Error);
}

TEST_CASE("translation length equals central length") {
  auto sig = z2z3();
  CHECK(translation_length(W(sig, "a b")) == TreeLength{4});
  CHECK(translation_length(W(sig, "a b")).str() == "2");
  CHECK(translation_length(power(W(sig, "a b"), 3)).value() == 6.0);
  auto sig3 = z2z2z2();
  CHECK(translation_length(W(sig3, "b a c b a c")).value() == 6.0);

  std::mt19937_64 rng(23);
  for (auto s : {z2z3(), z2z2z2()}) {
    for (int trial = 0; trial < 40; ++trial) {
      Word h = random_hyperbolic(s, rng, 6);
      CHECK(translation_length(h).half_units == 2 * central_length(h));
    }
  }

  // BFS oracle for small elements: the closed-form minimum displacement
  // matches a brute-force minimum over a ball around the identity.
  for (auto s : {z2z3(), z2z2z2()}) {
    for (int trial = 0; trial < 10; ++trial) {
      Word h = random_hyperbolic(s, rng, 4);
      if (central_length(h) > 4) continue;
      std::int64_t best = -1;
      for (const TreeVertex& v : bfs_ball(TreeVertex::element(Word::identity(s)), 6)) {
        auto d = bfs_distance(v, act(h, v), 40);
        REQUIRE(d.has_value());
        if (best < 0 || *d < best) best = *d;
      }
      CHECK(best == translation_length(h).half_units);
    }
  }
}

TEST_CASE("action is by isometries; stabilizers") {
  auto sig = z2z3();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Word h = random_word(sig, rng, int(rng() % 4));
    Word wu = random_word(sig, rng, int(rng() % 3));
    Word wv = random_word(sig, rng, int(rng() % 3));
    TreeVertex u = rng() % 2 ? TreeVertex::element(wu) : TreeVertex::coset(wu, int(rng() % 2));
    TreeVertex v = rng() % 2 ? TreeVertex::element(wv) : TreeVertex::coset(wv, int(rng() % 2));
    CHECK(tree_distance(act(h, u), act(h, v)) == tree_distance(u, v));
  }

  // g fixes the coset u H_a iff u^-1 g u lies in the factor.
  for (const Word& g : all_words(sig, 3)) {
    for (const Word& u : all_words(sig, 2)) {
      for (int a = 0; a < 2; ++a) {
        TreeVertex v = TreeVertex::coset(u, a);
        bool fixes = act(g, v) == v;
        Word t = conjugate(g, u);  // u^-1 g u
        bool in_factor = t.empty() || (t.size() == 1 && int(t[0].factor) == a);
        CHECK(fixes == in_factor);
      }
    }
  }

  // Edge stabilizers are trivial: only 1 fixes an element vertex at all.
  for (const Word& g : all_words(sig, 3)) {
    if (g.empty()) continue;
    TreeVertex e = TreeVertex::element(Word::identity(sig));
    CHECK(!(act(g, e) == e));
  }
}

TEST_CASE("axis overlap") {
  auto sig = z2z3();
  Word ab = W(sig, "a b");
  CHECK(axis_overlap(ab, ab, 2).kind == AxisOverlap::Kind::line);
  CHECK(axis_overlap(ab, power(ab, 3), 2).kind == AxisOverlap::Kind::line);

  Word ba = W(sig, "b a");
  AxisOverlap o = axis_overlap(ab, ba, 6);
  CHECK(o.kind == AxisOverlap::Kind::segment);
  // Overlap bound in natural units: |I| <= r1 + r2 - 1 = 3.
  CHECK(o.length.half_units <= 2 * (radical_length(ab) + radical_length(ba) - 1));

  // Conjugating far away gives a disjoint-or-short overlap.
  auto sig3 = z2z2z2();
  Word h1 = W(sig3, "a b");
  Word h2 = conjugate(h1, W(sig3, "c a c b c"));
  AxisOverlap o2 = axis_overlap(h1, h2, 8);
  CHECK((o2.kind == AxisOverlap::Kind::disjoint || o2.length.half_units == 0));
}

TEST_CASE("overlap bounds on random noncommuting pairs") {
  std::mt19937_64 rng(47);
  auto sig = z2z3();
  int done = 0;
  while (done < 60) {
    Word h1 = random_hyperbolic(sig, rng, 5);
    Word h2 = random_hyperbolic(sig, rng, 5);
    if (commutator(h1, h2).empty()) continue;
    ++done;
    int window = int(2 * (central_length(h1) + central_length(h2)) + 8);
    AxisOverlap o = axis_overlap(h1, h2, window);
    if (o.kind == AxisOverlap::Kind::segment)
      CHECK(o.length.half_units <= 2 * (radical_length(h1) + radical_length(h2) - 1));

    // Commutator lower bound for k = 2, doubled to stay in integers:
    // 2|[X1^k,X2^k]|_c >= 4(k|X1|_c + k|X2|_c) - 2|I|_edges.
    std::int64_t overlap_edges = o.kind == AxisOverlap::Kind::segment ? o.length.half_units : 0;
    std::int64_t k = 2;
    std::int64_t lhs = 2 * central_length(commutator(power(h1, k), power(h2, k)));
    std::int64_t rhs = 4 * (k * central_length(h1) + k * central_length(h2)) - 2 * overlap_edges;
    CHECK(lhs >= rhs);
  }
}
