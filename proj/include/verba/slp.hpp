#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "verba/word.hpp"

namespace verba {

using BigInt = boost::multiprecision::cpp_int;

/// Expression DAG over free-group variables z_0..z_{n-1}. Shared subterms
/// are shared nodes; nodes are immutable after construction.
class WordExpr {
 public:
  enum class Kind { One, Var, Mul, Inv, Pow, Comm };

  WordExpr();  // the empty word

  static WordExpr one();
  static WordExpr var(int index);
  static WordExpr mul(const WordExpr& l, const WordExpr& r);
  static WordExpr inv(const WordExpr& e);
  static WordExpr pow(const WordExpr& e, std::int64_t exponent);
  static WordExpr comm(const WordExpr& l, const WordExpr& r);
  /// Left-fold product of a sequence.
  static WordExpr product(const std::vector<WordExpr>& es);

  Kind kind() const;
  int var_index() const;
  std::int64_t exponent() const;
  WordExpr left() const;
  WordExpr right() const;

  /// Number of distinct nodes in the DAG.
  std::size_t node_count() const;
  /// 1 + max(var index) over the DAG (0 when no variables occur).
  int arity() const;

  /// Image under abelianization, coordinate i.
  std::int64_t exponent_sum(int i) const;
  std::vector<std::int64_t> exponent_sums() const;  // length = arity()

  /// Upper bound on the evaluated length via |uv| <= |u|+|v|, |u^k| <= k|u|.
  BigInt length_upper_bound(const std::vector<BigInt>& input_lengths) const;

  bool same_node(const WordExpr& other) const { return node_ == other.node_; }

  struct Node;
  const Node* raw() const { return node_.get(); }

 private:
  explicit WordExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Exact evaluation; throws BudgetError when any intermediate would exceed
/// `budget` syllables. Results are memoized per call across shared nodes.
Word evaluate(const WordExpr& e, const std::vector<Word>& assignment, std::uint64_t budget);

constexpr std::uint64_t kDefaultBudget = 5000000;  // syllables

/// Replaces Var(i) by replacements[i] throughout the DAG (sharing kept).
WordExpr substitute(const WordExpr& e, const std::vector<WordExpr>& replacements);

/// Textual dump: one node per line "id := op args", topologically sorted,
/// closing "root idN" line.
std::string dump_slp(const WordExpr& e);
WordExpr parse_slp(const std::string& text);

}  // namespace verba
