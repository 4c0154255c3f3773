#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "verba/errors.hpp"

namespace verba {

using Elt = std::uint16_t;

/// A finite group given by its Cayley table. Element 0 is always the identity;
/// tables whose identity sits elsewhere are re-indexed on construction.
class FactorGroup {
 public:
  /// Cyclic group of order n (n >= 2).
  static FactorGroup cyclic(int n);
  /// Validates the table exhaustively (identity, inverses, associativity).
  static FactorGroup from_table(const std::vector<std::vector<int>>& table);

  int order() const { return order_; }
  Elt mult(Elt a, Elt b) const { return mult_[std::size_t(a) * order_ + b]; }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt power(Elt a, std::int64_t e) const;
  bool is_abelian() const;

  /// Brute-force conjugacy inside the factor: t with t^-1 g t == h.
  std::optional<Elt> conjugator(Elt g, Elt h) const;

  bool operator==(const FactorGroup& other) const {
    return order_ == other.order_ && mult_ == other.mult_;
  }

 private:
  FactorGroup() = default;
  int order_ = 0;
  std::vector<Elt> mult_;  // order x order, row-major
  std::vector<Elt> inv_;
};

/// An ordered family of at least two nontrivial finite factors.
class Signature {
 public:
  explicit Signature(std::vector<FactorGroup> factors, std::vector<std::string> names = {});

  int factor_count() const { return int(factors_.size()); }
  const FactorGroup& factor(int i) const;
  const std::string& factor_name(int i) const { return names_[std::size_t(i)]; }
  /// Index of the factor with the given display name, or -1.
  int factor_by_name(const std::string& name) const;

  bool operator==(const Signature& other) const;

 private:
  std::vector<FactorGroup> factors_;
  std::vector<std::string> names_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Parses "Z2*Z2*Z3" or "table:<file>" (one factor per block in the file).
SignaturePtr parse_group_spec(const std::string& spec);
/// Parses the contents of a table file: blocks of "order n" + n rows.
SignaturePtr parse_group_table(const std::string& text);

}  // namespace verba
