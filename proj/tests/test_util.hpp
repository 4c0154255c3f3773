#pragma once

#include <functional>
#include <random>
#include <vector>

#include "verba/word.hpp"

namespace verba::testutil {

inline SignaturePtr z5z2() { return parse_group_spec("Z5*Z2"); }
inline SignaturePtr z2z2z2() { return parse_group_spec("Z2*Z2*Z2"); }
inline SignaturePtr z2z3() { return parse_group_spec("Z2*Z3"); }

inline Word W(const SignaturePtr& sig, const std::string& text) { return parse_word(sig, text); }

/// All reduced words of syllable length <= max_len, shortlex order.
inline std::vector<Word> all_words(const SignaturePtr& sig, int max_len) {
  std::vector<Word> out{Word::identity(sig)};
  std::vector<Word> frontier = out;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int f = 0; f < sig->factor_count(); ++f) {
        if (!w.empty() && int(w.back().factor) == f) continue;
        for (int e = 1; e < sig->factor(f).order(); ++e) {
          std::vector<Syllable> s(w.syllables().begin(), w.syllables().end());
          s.push_back(Syllable{std::uint16_t(f), Elt(e)});
          next.push_back(Word::trusted(sig, std::move(s)));
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline Word random_word(const SignaturePtr& sig, std::mt19937_64& rng, int len) {
  std::vector<Syllable> s;
  int prev = -1;
  for (int i = 0; i < len; ++i) {
    int f = int(rng() % std::uint64_t(sig->factor_count()));
    if (f == prev) f = (f + 1) % sig->factor_count();
    int e = 1 + int(rng() % std::uint64_t(sig->factor(f).order() - 1));
    s.push_back(Syllable{std::uint16_t(f), Elt(e)});
    prev = f;
  }
  return Word::trusted(sig, std::move(s));
}

inline Word random_hyperbolic(const SignaturePtr& sig, std::mt19937_64& rng, int max_len) {
  for (;;) {
    int len = 2 + int(rng() % std::uint64_t(std::max(1, max_len - 1)));
    Word w = random_word(sig, rng, len);
    if (is_hyperbolic(w)) return w;
  }
}

}  // namespace verba::testutil
