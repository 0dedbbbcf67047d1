#ifndef PAIRMIX_FINITE_GROUP_HPP_
#define PAIRMIX_FINITE_GROUP_HPP_

#include <string>
#include <vector>

#include "errors.hpp"

namespace pairmix {

//! Finite group given by its full multiplication table. Element 0 is the
//! identity. Validation checks the table is a genuine group (identity row
//! and column, Latin square, associativity) -- the orders involved are tiny.
struct FiniteGroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // table[i][j] = index of g_i * g_j

  int order() const {
    return static_cast<int>(table.size());
  }

  int mul(int i, int j) const {
    return table[i][j];
  }

  int inv(int i) const;
  int element_order(int i) const;
  int index_of(std::string const& name) const;

  void validate(std::string const& what) const;

  //! Powers of a cyclic group Z/n, names "e", base, base^2, ...
  static FiniteGroupTable cyclic(int n, std::string const& base_name);
};

}  // namespace pairmix

#endif  // PAIRMIX_FINITE_GROUP_HPP_
