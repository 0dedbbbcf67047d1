#include "pairmix/pair_context.hpp"

namespace pairmix {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, Int(0));
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1;
  }
  return m;
}

IntMatrix IntMatrix::mul(IntMatrix const& o) const {
  IntMatrix out;
  out.n = n;
  out.a.assign(a.size(), Int(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (at(i, k) == 0) {
        continue;
      }
      for (int j = 0; j < n; ++j) {
        out.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  }
  return out;
}

std::vector<Int> IntMatrix::apply(std::vector<Int> const& v) const {
  std::vector<Int> out(n, Int(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[i] += at(i, j) * v[j];
    }
  }
  return out;
}

Int IntMatrix::det() const {
  // Bareiss fraction-free elimination; all divisions are exact.
  IntMatrix m = *this;
  Int prev(1);
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    if (m.at(col, col) == 0) {
      int p = -1;
      for (int i = col + 1; i < n; ++i) {
        if (m.at(i, col) != 0) {
          p = i;
          break;
        }
      }
      if (p < 0) {
        return 0;
      }
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(col, j), m.at(p, j));
      }
      sign = -sign;
    }
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j) {
        m.at(i, j) =
            (m.at(i, j) * m.at(col, col) - m.at(i, col) * m.at(col, j)) / prev;
      }
      m.at(i, col) = 0;
    }
    prev = m.at(col, col);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

IntMatrix IntMatrix::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) {
    throw_error(ErrorKind::ConfigError,
                "matrix determinant is " + d.str() + ", must be +1 or -1");
  }
  // Gauss-Jordan over exact rationals, then read back integer entries.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[i][j] = Rat(at(i, j));
    }
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i) {
      if (m[i][col] != 0) {
        p = i;
        break;
      }
    }
    std::swap(m[col], m[p]);
    Rat pivot = m[col][col];
    for (int j = 0; j < 2 * n; ++j) {
      m[col][j] /= pivot;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) {
        continue;
      }
      Rat f = m[i][col];
      for (int j = 0; j < 2 * n; ++j) {
        m[i][j] -= f * m[col][j];
      }
    }
  }
  IntMatrix out;
  out.n = n;
  out.a.assign(a.size(), Int(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.at(i, j) = rat_num(m[i][n + j]);  // denominator is 1 here
    }
  }
  return out;
}

IntMatrix IntMatrix::power(Int k) const {
  IntMatrix base = k < 0 ? inverse_unimodular() : *this;
  if (k < 0) {
    k = -k;
  }
  IntMatrix out = identity(n);
  while (k > 0) {
    if (k % 2 == 1) {
      out = out.mul(base);
    }
    base = base.mul(base);
    k /= 2;
  }
  return out;
}

}  // namespace pairmix
