#pragma once

#include <random>
#include <string>
#include <vector>

#include "verba/testwords.hpp"

namespace verba {

struct Counterexample {
  std::int64_t trial = 0;
  std::string description;  // inputs and observed vs required, re-runnable
};

struct SuiteReport {
  std::string suite;
  std::int64_t trials = 0;
  std::int64_t passed = 0;
  std::int64_t vacuous = 0;  // precondition unmet, never counted as a pass
  std::vector<Counterexample> failures;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  bool ok() const { return failures.empty(); }
  std::string to_text() const;
};

/// All reduced words of syllable length <= max_len, shortlex order
/// (length, then factor id, then letter index).
std::vector<Word> enumerate_words(const SignaturePtr& sig, int max_len);

/// Deterministic samplers shared by the suites.
Word sample_word(const SignaturePtr& sig, std::mt19937_64& rng, int len);
Word sample_hyperbolic(const SignaturePtr& sig, std::mt19937_64& rng, int max_len);
/// Noncommuting hyperbolic pair; the radical-length shortcut (commuting
/// hyperbolics have equal radical length) runs before the full check.
std::pair<Word, Word> sample_noncommuting_pair(const SignaturePtr& sig, std::mt19937_64& rng,
                                               int max_len);

SuiteReport check_words(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);
SuiteReport check_finewilf(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);
SuiteReport check_boundary_lemmas(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);
SuiteReport check_mcl(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);
SuiteReport check_tree_lemmas(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);
SuiteReport check_l2(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                     std::uint64_t budget = std::uint64_t(1) << 27);
SuiteReport check_ticadd2(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                          std::uint64_t budget = std::uint64_t(1) << 27);
SuiteReport check_recover(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                          std::uint64_t budget = std::uint64_t(1) << 27);
SuiteReport check_solver(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed);

/// Runs one named suite: words, finewilf, boundary, mcl, tree, l2, ticadd2,
/// recover, solve-demo. Throws UnknownSuite otherwise.
SuiteReport run_suite(const std::string& name, const SignaturePtr& sig, std::int64_t samples,
                      std::uint64_t seed, std::uint64_t budget = std::uint64_t(1) << 27);
std::vector<std::string> suite_names();

/// Searches v in {T_value^j : |j| <= cap} with x_i = v^-1 y_i v for all i.
std::optional<Word> recover_conjugator(const std::vector<Word>& xs, const std::vector<Word>& ys,
                                       const Word& t_value, int cap = 3,
                                       std::uint64_t budget = std::uint64_t(1) << 27);

struct EquationSystem {
  std::vector<WordExpr> lhs;
  std::vector<Word> rhs;
};

/// Brute-force solver over all assignments of words of length <= max_len.
std::optional<std::vector<Word>> solve_equation_system(const EquationSystem& system, int max_len,
                                                       std::uint64_t budget = 1 << 20);

/// The single-equation form of a plain system: one equation
/// M(w_0(z),..,w_{n-1}(z), z', z'') = M(h_0,..,h_{n-1}, u1, u2)
/// built over the tuple (h_0..h_{n-1}, u1, u2); SLP level only.
struct SingleEquationReduction {
  MWords mwords;
  WordExpr lhs;                 // in m+2 variables (m = system variable count)
  std::vector<Word> rhs_tuple;  // the tuple M is evaluated at on the right
};
SingleEquationReduction reduce_to_single_equation(const EquationSystem& system, const Word& u1,
                                                  const Word& u2,
                                                  std::uint64_t budget = std::uint64_t(1) << 27);

}  // namespace verba
