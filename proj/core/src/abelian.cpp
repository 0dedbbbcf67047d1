#include "pairmix/abelian.hpp"

#include <algorithm>
#include <utility>

namespace pairmix {

int cmp(AbelianVec const& a, AbelianVec const& b) {
  if (a.coords.size() != b.coords.size()) {
    return a.coords.size() < b.coords.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] != b.coords[i]) {
      return a.coords[i] < b.coords[i] ? -1 : 1;
    }
  }
  return 0;
}

Int floor_div(Int const& a, Int const& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

void FGAbelianSpec::validate_and_default_names(std::string const& what) {
  if (free_rank < 0) {
    throw_error(ErrorKind::ConfigError, what + ": negative free rank");
  }
  for (auto const& d : torsion) {
    if (d < 2) {
      throw_error(ErrorKind::ConfigError, what + ": torsion order must be >= 2");
    }
  }
  if (names.empty()) {
    for (int i = 0; i < free_rank; ++i) {
      names.push_back("u" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      names.push_back("c" + std::to_string(i + 1));
    }
  }
  if (static_cast<int>(names.size()) != dim()) {
    throw_error(ErrorKind::ConfigError,
                what + ": expected " + std::to_string(dim()) + " names, got " +
                    std::to_string(names.size()));
  }
}

AbelianVec FGAbelianSpec::zero() const {
  return AbelianVec{std::vector<Int>(dim(), Int(0))};
}

AbelianVec FGAbelianSpec::normalized(std::vector<Int> coords) const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Int& c = coords[free_rank + i];
    c -= floor_div(c, torsion[i]) * torsion[i];
  }
  return AbelianVec{std::move(coords)};
}

AbelianVec FGAbelianSpec::add(AbelianVec const& a, AbelianVec const& b) const {
  std::vector<Int> out(dim());
  for (int i = 0; i < dim(); ++i) {
    out[i] = a.coords[i] + b.coords[i];
  }
  return normalized(std::move(out));
}

AbelianVec FGAbelianSpec::neg(AbelianVec const& a) const {
  std::vector<Int> out(dim());
  for (int i = 0; i < dim(); ++i) {
    out[i] = -a.coords[i];
  }
  return normalized(std::move(out));
}

AbelianVec FGAbelianSpec::basis_element(int i) const {
  AbelianVec v = zero();
  v.coords[i] = 1;
  return v;
}

bool FGAbelianSpec::is_zero(AbelianVec const& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(),
                     [](Int const& c) { return c == 0; });
}

std::vector<std::vector<Int>> FGAbelianSpec::torsion_rows() const {
  std::vector<std::vector<Int>> rows;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    std::vector<Int> row(dim(), Int(0));
    row[free_rank + i] = torsion[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FGAbelianSpec::to_word(AbelianVec const& a) const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (a.coords[i] == 0) {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += names[i];
    if (a.coords[i] != 1) {
      out += '^' + a.coords[i].str();
    }
  }
  return out.empty() ? "1" : out;
}

AbelianLattice::AbelianLattice(int dim,
                               std::vector<std::vector<Int>> generator_rows)
    : _dim(dim), _gens(std::move(generator_rows)) {
  std::size_t m = _gens.size();
  for (auto const& row : _gens) {
    if (static_cast<int>(row.size()) != dim) {
      throw_error(ErrorKind::InternalError, "lattice row dimension mismatch");
    }
  }
  auto rows = _gens;
  // transform starts as the identity; row operations are mirrored so that
  // transform . gens == rows at all times
  std::vector<std::vector<Int>> transform(m, std::vector<Int>(m, Int(0)));
  for (std::size_t i = 0; i < m; ++i) {
    transform[i][i] = 1;
  }

  std::size_t r = 0;
  for (int col = 0; col < dim && r < m; ++col) {
    // eliminate below position r until at most one nonzero remains in col
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (rows[i][col] != 0 &&
            (best == m || boost::multiprecision::abs(rows[i][col]) <
                              boost::multiprecision::abs(rows[best][col]))) {
          best = i;
        }
      }
      if (best == m) {
        break;  // column is zero below r
      }
      std::swap(rows[r], rows[best]);
      std::swap(transform[r], transform[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][col] == 0) {
          continue;
        }
        Int q = floor_div(rows[i][col], rows[r][col]);
        if (q != 0) {
          for (int j = 0; j < dim; ++j) {
            rows[i][j] -= q * rows[r][j];
          }
          for (std::size_t j = 0; j < m; ++j) {
            transform[i][j] -= q * transform[r][j];
          }
        }
        if (rows[i][col] != 0) {
          others = true;
        }
      }
      if (!others) {
        break;
      }
    }
    if (rows[r][col] == 0) {
      continue;
    }
    if (rows[r][col] < 0) {
      for (auto& x : rows[r]) {
        x = -x;
      }
      for (auto& x : transform[r]) {
        x = -x;
      }
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(rows[i][col], rows[r][col]);
      if (q != 0) {
        for (int j = 0; j < dim; ++j) {
          rows[i][j] -= q * rows[r][j];
        }
        for (std::size_t j = 0; j < m; ++j) {
          transform[i][j] -= q * transform[r][j];
        }
      }
    }
    _pivot_col.push_back(col);
    ++r;
  }

  _hnf.assign(rows.begin(), rows.begin() + r);
  _top.assign(transform.begin(), transform.begin() + r);
  _kernel.assign(transform.begin() + r, transform.end());
}

bool AbelianLattice::contains(std::vector<Int> const& v) const {
  auto rep = reduce(v);
  return std::all_of(rep.begin(), rep.end(),
                     [](Int const& c) { return c == 0; });
}

std::vector<Int> AbelianLattice::reduce(std::vector<Int> const& v) const {
  std::vector<Int> w = v;
  for (std::size_t i = 0; i < _hnf.size(); ++i) {
    int p = _pivot_col[i];
    Int q = floor_div(w[p], _hnf[i][p]);
    if (q != 0) {
      for (int j = 0; j < _dim; ++j) {
        w[j] -= q * _hnf[i][j];
      }
    }
  }
  return w;
}

std::optional<std::vector<Int>> AbelianLattice::solve(
    std::vector<Int> const& v) const {
  std::vector<Int> w = v;
  std::vector<Int> coeff_on_hnf(_hnf.size(), Int(0));
  for (std::size_t i = 0; i < _hnf.size(); ++i) {
    int p = _pivot_col[i];
    if (w[p] % _hnf[i][p] != 0) {
      return std::nullopt;
    }
    Int q = w[p] / _hnf[i][p];
    coeff_on_hnf[i] = q;
    if (q != 0) {
      for (int j = 0; j < _dim; ++j) {
        w[j] -= q * _hnf[i][j];
      }
    }
  }
  if (!std::all_of(w.begin(), w.end(), [](Int const& c) { return c == 0; })) {
    return std::nullopt;
  }
  std::vector<Int> coeffs(_gens.size(), Int(0));
  for (std::size_t i = 0; i < _hnf.size(); ++i) {
    for (std::size_t j = 0; j < _gens.size(); ++j) {
      coeffs[j] += coeff_on_hnf[i] * _top[i][j];
    }
  }
  return coeffs;
}

bool AbelianLattice::contains_lattice(AbelianLattice const& other) const {
  return std::all_of(other._hnf.begin(), other._hnf.end(),
                     [this](auto const& row) { return contains(row); });
}

bool AbelianLattice::equals_lattice(AbelianLattice const& other) const {
  return contains_lattice(other) && other.contains_lattice(*this);
}

AbelianLattice AbelianLattice::intersect(AbelianLattice const& a,
                                         AbelianLattice const& b) {
  if (a.dim() != b.dim()) {
    throw_error(ErrorKind::InternalError, "intersect: dimension mismatch");
  }
  // relations u.A + w.B = 0 give exactly the vectors u.A = -(w.B) lying in
  // both lattices
  std::vector<std::vector<Int>> stacked = a._hnf;
  stacked.insert(stacked.end(), b._hnf.begin(), b._hnf.end());
  AbelianLattice joint(a.dim(), stacked);
  std::vector<std::vector<Int>> gens;
  for (auto const& rel : joint.kernel()) {
    std::vector<Int> v(a.dim(), Int(0));
    for (std::size_t i = 0; i < a._hnf.size(); ++i) {
      for (int j = 0; j < a.dim(); ++j) {
        v[j] += rel[i] * a._hnf[i][j];
      }
    }
    gens.push_back(std::move(v));
  }
  return AbelianLattice(a.dim(), gens);
}

}  // namespace pairmix
