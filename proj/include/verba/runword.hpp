#pragma once

#include <memory>
#include <vector>

#include "verba/word.hpp"

namespace verba {

/// One run: the subword of base^inf starting at `start` (< |base|) of
/// virtual length `len`. Runs that wrap past one period require a
/// cyclically reduced base, so the flattening is reduced.
struct Run {
  std::shared_ptr<const Word> base;
  std::int64_t start = 0;
  std::int64_t len = 0;

  std::int64_t period() const { return std::int64_t(base->size()); }
  Syllable at(std::int64_t i) const { return (*base)[std::size_t((start + i) % period())]; }
};

/// Exact reduced words in run-length form. Group arithmetic cancels at run
/// seams only; aligned power-against-power cancellation telescopes in
/// gcd-period blocks, so products of huge powers of short simple words stay
/// cheap. Used where flat words would need >10^9 syllables.
class RunWord {
 public:
  RunWord() = default;
  static RunWord identity(SignaturePtr sig) { return RunWord(std::move(sig), {}); }
  static RunWord from_word(const Word& w);
  /// base^count, base cyclically reduced with |base| >= 2 when count > 1.
  static RunWord from_power(const Word& base, std::int64_t count);

  const SignaturePtr& sig() const { return sig_; }
  bool is_identity() const { return runs_.empty(); }
  std::int64_t total_length() const;
  std::size_t run_count() const { return runs_.size(); }

  Word flatten(std::uint64_t cap) const;

  friend RunWord multiply(const RunWord& u, const RunWord& v);
  friend RunWord invert(const RunWord& u);
  RunWord power(std::int64_t n) const;  // |n| small; repeated multiplication

  /// Central length |.|_c via symmetric seam reduction.
  std::int64_t cyclic_length() const;

  bool operator==(const RunWord& other) const;

 private:
  RunWord(SignaturePtr sig, std::vector<Run> runs) : sig_(std::move(sig)), runs_(std::move(runs)) {}
  void append_run(Run r);

  SignaturePtr sig_;
  std::vector<Run> runs_;
};

}  // namespace verba
