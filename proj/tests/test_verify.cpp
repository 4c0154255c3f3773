#include <doctest.h>

#include "test_util.hpp"
#include "verba/verify.hpp"

using namespace verba;
using namespace verba::testutil;

TEST_CASE("word enumeration is shortlex-complete") {
  auto sig22 = parse_group_spec("Z2*Z2");
  auto words1 = enumerate_words(sig22, 1);
  REQUIRE(words1.size() == 3);
  CHECK(format_word(words1[0]) == "1");
  CHECK(format_word(words1[1]) == "a");
  CHECK(format_word(words1[2]) == "b");
  CHECK(enumerate_words(sig22, 2).size() == 5);

  auto sig = z5z2();
  CHECK(enumerate_words(sig, 2).size() == 14);

  // Shortlex order and reducedness.
  auto all = enumerate_words(z2z3(), 4);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].shortlex_less(all[i]));
  for (const Word& w : all)
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i].factor != w[i - 1].factor);
}

TEST_CASE("core suites pass on desk groups") {
  struct Case {
    const char* suite;
    const char* group;
    std::int64_t samples;
  };
  for (const Case& c : {Case{"words", "Z5*Z2", 120}, Case{"words", "Z2*Z2*Z2", 120},
                        Case{"finewilf", "Z2*Z2*Z2", 80}, Case{"finewilf", "Z5*Z2", 80},
                        Case{"boundary", "Z2*Z3", 80}, Case{"boundary", "Z2*Z2*Z2", 80},
                        Case{"mcl", "Z2*Z3", 60}, Case{"tree", "Z2*Z3", 45},
                        Case{"solve-demo", "Z2*Z3", 10}}) {
    SuiteReport r = run_suite(c.suite, parse_group_spec(c.group), c.samples, 20240817);
    INFO(r.to_text());
    CHECK(r.ok());
    CHECK(r.trials == c.samples);
    CHECK(r.passed + r.vacuous == r.trials);
  }
  CHECK_THROWS_AS(run_suite("bogus", z2z3(), 1, 0), Error);
}

TEST_CASE("suites over a nonabelian factor") {
  // S3 * Z2 gives genuinely elliptic commutators for the C1 hypothesis.
  std::string table =
      "order 6\n"
      "0 1 2 3 4 5\n"
      "1 0 4 5 2 3\n"
      "2 5 0 4 3 1\n"
      "3 4 5 0 1 2\n"
      "4 3 1 2 5 0\n"
      "5 2 3 1 0 4\n"
      "order 2\n"
      "0 1\n"
      "1 0\n";
  SignaturePtr sig = parse_group_table(table);
  SuiteReport r = check_mcl(sig, 40, 7);
  INFO(r.to_text());
  CHECK(r.ok());
  CHECK(r.passed > 0);
  for (const char* suite : {"words", "finewilf", "boundary", "tree"}) {
    SuiteReport s = run_suite(suite, sig, 40, 11);
    INFO(s.to_text());
    CHECK(s.ok());
  }
}

TEST_CASE("square commutators sit exactly at the exponent-two boundary") {
  // In Z2*Z2*Z2, [(ab)^k1, (bc)^k2] = ((ba)^k1 (cb)^{k2-1} c)^2: the
  // exponent bound "<= 2" is tight, so these instances must be accepted.
  auto sig = z2z2z2();
  Word ab = W(sig, "a b");
  Word bc = W(sig, "b c");
  for (int n = 2; n <= 3; ++n) {
    for (int m = 2; m <= 5; ++m) {
      Word w = commutator(power(ab, n), power(bc, n * m));
      CHECK(hyperbolic_decompose(w).k == 2);
    }
  }
}

TEST_CASE("general tuples with elliptic components still produce M words") {
  auto sig = z2z3();
  // x0 is elliptic; the generated subgroup still contains noncommuting
  // hyperbolic elements, which is all the construction needs.
  std::vector<Word> xs{W(sig, "a"), W(sig, "a b")};
  MWords m = m_words(xs, std::uint64_t(1) << 27);
  CHECK(m.xhat.size() == 14);
  CHECK(evaluate(m.fw, xs, 1 << 22) == m.w);
  CHECK(is_hyperbolic(m.u1));
  CHECK(is_hyperbolic(m.u2));
  CHECK(!commutator(m.u1, m.u2).empty());
  CHECK(m.M.exponent_sums() == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("suite reports are deterministic") {
  auto sig = z2z3();
  SuiteReport a = check_words(sig, 50, 99);
  SuiteReport b = check_words(sig, 50, 99);
  CHECK(a.trials == b.trials);
  CHECK(a.passed == b.passed);
  CHECK(a.vacuous == b.vacuous);
  CHECK(a.failures.size() == b.failures.size());
}

TEST_CASE("l2 suite") {
  SuiteReport r = check_l2(z2z3(), 2, 5);
  INFO(r.to_text());
  CHECK(r.ok());
}

TEST_CASE("recover suite") {
  SuiteReport r = check_recover(z2z3(), 3, 5);
  INFO(r.to_text());
  CHECK(r.ok());
  CHECK(r.passed > 0);
}

TEST_CASE("ticadd2 suite (compressed equality engine)") {
  SuiteReport r = check_ticadd2(z2z3(), 2, 5);
  INFO(r.to_text());
  CHECK(r.ok());
  CHECK(r.passed > 0);
}

TEST_CASE("recover conjugator directly") {
  auto sig = z2z3();
  Word x0 = W(sig, "a b");
  Word x1 = W(sig, "a b^2");
  TWordFamily fam = t_words({x0, x1}, std::uint64_t(1) << 26);
  Word tval = *fam.value(2, 0);
  Word u = power(tval, 2);
  std::vector<Word> xs{x0, x1};
  std::vector<Word> ys{conjugate(x0, u), conjugate(x1, u)};
  auto v = recover_conjugator(xs, ys, tval);
  REQUIRE(v.has_value());
  CHECK(xs[0] == conjugate(ys[0], *v));
  CHECK(xs[1] == conjugate(ys[1], *v));

  auto v1 = recover_conjugator(xs, xs, tval);
  REQUIRE(v1.has_value());
  CHECK(v1->empty());
}

TEST_CASE("equation solver") {
  auto sig = z2z3();
  // z0 = h.
  EquationSystem direct;
  direct.lhs.push_back(WordExpr::var(0));
  direct.rhs.push_back(W(sig, "a b"));
  auto sol = solve_equation_system(direct, 2);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == W(sig, "a b"));

  // z0^2 = (ab)^2 has the solution z0 = ab at length 2.
  EquationSystem square;
  square.lhs.push_back(WordExpr::pow(WordExpr::var(0), 2));
  square.rhs.push_back(power(W(sig, "a b"), 2));
  auto sol2 = solve_equation_system(square, 2);
  REQUIRE(sol2.has_value());
  CHECK(evaluate(square.lhs[0], *sol2, 1 << 20) == square.rhs[0]);

  // z0^2 = a has no solution.
  EquationSystem bad;
  bad.lhs.push_back(WordExpr::pow(WordExpr::var(0), 2));
  bad.rhs.push_back(W(sig, "a"));
  CHECK(!solve_equation_system(bad, 4).has_value());
}

TEST_CASE("single equation reduction") {
  auto sig = z2z3();
  EquationSystem sys;
  sys.lhs.push_back(WordExpr::var(0));
  sys.lhs.push_back(WordExpr::mul(WordExpr::var(0), WordExpr::var(1)));
  sys.rhs.push_back(W(sig, "a b"));
  sys.rhs.push_back(W(sig, "a b a b^2"));
  SingleEquationReduction red =
      reduce_to_single_equation(sys, W(sig, "a b"), W(sig, "a b^2"), std::uint64_t(1) << 27);
  // The single equation uses the system variables plus two fresh ones.
  CHECK(red.lhs.arity() == 4);
  auto sums = red.lhs.exponent_sums();
  for (std::int64_t s : sums) CHECK(s == 0);
  CHECK(red.rhs_tuple.size() == 4);
  CHECK(red.mwords.xhat.size() == 4 * 4 + 6);
}
