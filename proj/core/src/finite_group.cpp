#include "pairmix/finite_group.hpp"

namespace pairmix {

int FiniteGroupTable::inv(int i) const {
  for (int j = 0; j < order(); ++j) {
    if (table[i][j] == 0) {
      return j;
    }
  }
  throw_error(ErrorKind::InternalError, "element without inverse");
}

int FiniteGroupTable::element_order(int i) const {
  int x = i;
  int n = 1;
  while (x != 0) {
    x = table[x][i];
    ++n;
  }
  return n;
}

int FiniteGroupTable::index_of(std::string const& name) const {
  for (int i = 0; i < order(); ++i) {
    if (names[i] == name) {
      return i;
    }
  }
  throw_error(ErrorKind::UnknownGenerator, "unknown element \"" + name + "\"");
}

void FiniteGroupTable::validate(std::string const& what) const {
  int n = order();
  if (n == 0) {
    throw_error(ErrorKind::ConfigError, what + ": empty group table");
  }
  if (names.size() != table.size()) {
    throw_error(ErrorKind::ConfigError, what + ": names/table size mismatch");
  }
  for (auto const& row : table) {
    if (static_cast<int>(row.size()) != n) {
      throw_error(ErrorKind::ConfigError, what + ": table is not square");
    }
    for (int e : row) {
      if (e < 0 || e >= n) {
        throw_error(ErrorKind::ConfigError, what + ": table entry out of range");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (table[0][i] != i || table[i][0] != i) {
      throw_error(ErrorKind::ConfigError,
                  what + ": element 0 is not the identity");
    }
  }
  // Latin square: each row and column is a permutation
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (int j = 0; j < n; ++j) {
      if (row_seen[table[i][j]] || col_seen[table[j][i]]) {
        throw_error(ErrorKind::ConfigError,
                    what + ": table row/column is not a permutation");
      }
      row_seen[table[i][j]] = true;
      col_seen[table[j][i]] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (table[table[i][j]][k] != table[i][table[j][k]]) {
          throw_error(ErrorKind::ConfigError, what + ": table not associative");
        }
      }
    }
  }
}

FiniteGroupTable FiniteGroupTable::cyclic(int n, std::string const& base_name) {
  FiniteGroupTable g;
  g.names.push_back("e");
  for (int i = 1; i < n; ++i) {
    g.names.push_back(i == 1 ? base_name
                             : base_name + "^" + std::to_string(i));
  }
  g.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g.table[i][j] = (i + j) % n;
    }
  }
  return g;
}

}  // namespace pairmix
