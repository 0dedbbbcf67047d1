#include "pairmix/element.hpp"

namespace pairmix {

char const* family_name(Family f) {
  switch (f) {
    case Family::FreeGroup: return "free";
    case Family::Amalgam: return "amalgam";
    case Family::Hnn: return "hnn";
    case Family::Semidirect: return "semidirect";
    case Family::RationalTriangular2: return "triangular2";
    case Family::RationalTriangular3: return "triangular3";
    case Family::FreeProduct: return "free-product";
  }
  return "?";
}

namespace {

int cmp_int(Int const& a, Int const& b) {
  return a == b ? 0 : (a < b ? -1 : 1);
}

int cmp_rat(Rat const& a, Rat const& b) {
  return a == b ? 0 : (a < b ? -1 : 1);
}

int cmp_free(FreeWord const& a, FreeWord const& b) {
  if (a.runs.size() != b.runs.size()) {
    return a.runs.size() < b.runs.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    if (a.runs[i].first != b.runs[i].first) {
      return a.runs[i].first < b.runs[i].first ? -1 : 1;
    }
    if (int c = cmp_int(a.runs[i].second, b.runs[i].second)) {
      return c;
    }
  }
  return 0;
}

int cmp_amalgam(AmalgamForm const& a, AmalgamForm const& b) {
  if (a.chain.size() != b.chain.size()) {
    return a.chain.size() < b.chain.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.chain.size(); ++i) {
    auto const& x = a.chain[i];
    auto const& y = b.chain[i];
    if (x.in_gamma1 != y.in_gamma1) {
      return x.in_gamma1 ? 1 : -1;
    }
    if (x.in_gamma1) {
      if (x.s != y.s) {
        return x.s < y.s ? -1 : 1;
      }
    } else if (int c = cmp(x.r, y.r)) {
      return c;
    }
  }
  return a.tail == b.tail ? 0 : (a.tail < b.tail ? -1 : 1);
}

int cmp_hnn(HnnForm const& a, HnnForm const& b) {
  if (a.letters.size() != b.letters.size()) {
    return a.letters.size() < b.letters.size() ? -1 : 1;
  }
  if (int c = cmp(a.head, b.head)) {
    return c;
  }
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (a.letters[i].first != b.letters[i].first) {
      return a.letters[i].first < b.letters[i].first ? -1 : 1;
    }
    if (int c = cmp(a.letters[i].second, b.letters[i].second)) {
      return c;
    }
  }
  return 0;
}

int cmp_semidirect(SemidirectPair const& a, SemidirectPair const& b) {
  if (int c = cmp_int(a.k, b.k)) {
    return c;
  }
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    if (int c = cmp_int(a.v[i], b.v[i])) {
      return c;
    }
  }
  return 0;
}

int cmp_tri2(Tri2Matrix const& a, Tri2Matrix const& b) {
  if (int c = cmp_rat(a.f, b.f)) {
    return c;
  }
  return cmp_rat(a.x, b.x);
}

int cmp_tri3(Tri3Matrix const& a, Tri3Matrix const& b) {
  if (int c = cmp_rat(a.f1, b.f1)) {
    return c;
  }
  if (int c = cmp_rat(a.f2, b.f2)) {
    return c;
  }
  if (int c = cmp_rat(a.x, b.x)) {
    return c;
  }
  return cmp_rat(a.y, b.y);
}

int cmp_free_prod(FreeProdWord const& a, FreeProdWord const& b) {
  if (a.syls.size() != b.syls.size()) {
    return a.syls.size() < b.syls.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.syls.size(); ++i) {
    bool af = a.syls[i].in_finite();
    bool bf = b.syls[i].in_finite();
    if (af != bf) {
      return af ? 1 : -1;
    }
    if (af) {
      if (a.syls[i].g != b.syls[i].g) {
        return a.syls[i].g < b.syls[i].g ? -1 : 1;
      }
    } else if (int c = cmp(*a.syls[i].inner, *b.syls[i].inner)) {
      return c;
    }
  }
  return 0;
}

}  // namespace

int cmp(Element const& a, Element const& b) {
  if (a.payload.index() != b.payload.index()) {
    return a.payload.index() < b.payload.index() ? -1 : 1;
  }
  switch (a.family()) {
    case Family::FreeGroup:
      return cmp_free(std::get<FreeWord>(a.payload),
                      std::get<FreeWord>(b.payload));
    case Family::Amalgam:
      return cmp_amalgam(std::get<AmalgamForm>(a.payload),
                         std::get<AmalgamForm>(b.payload));
    case Family::Hnn:
      return cmp_hnn(std::get<HnnForm>(a.payload),
                     std::get<HnnForm>(b.payload));
    case Family::Semidirect:
      return cmp_semidirect(std::get<SemidirectPair>(a.payload),
                            std::get<SemidirectPair>(b.payload));
    case Family::RationalTriangular2:
      return cmp_tri2(std::get<Tri2Matrix>(a.payload),
                      std::get<Tri2Matrix>(b.payload));
    case Family::RationalTriangular3:
      return cmp_tri3(std::get<Tri3Matrix>(a.payload),
                      std::get<Tri3Matrix>(b.payload));
    case Family::FreeProduct:
      return cmp_free_prod(std::get<FreeProdWord>(a.payload),
                           std::get<FreeProdWord>(b.payload));
  }
  return 0;
}

}  // namespace pairmix
