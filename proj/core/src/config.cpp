#include "pairmix/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pairmix {

using Json = nlohmann::json;

std::string fnv1a64_hex(std::string const& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace {

[[noreturn]] void bad(std::string const& msg) {
  throw_error(ErrorKind::ConfigError, msg);
}

Int json_to_int(Json const& j, std::string const& what) {
  if (j.is_number_integer()) {
    return Int(j.get<long long>());
  }
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (std::exception const&) {
      bad(what + ": bad integer string");
    }
  }
  bad(what + ": expected integer or integer string");
}

Rat json_to_rat(Json const& j, std::string const& what) {
  if (j.is_number_integer()) {
    return Rat(j.get<long long>());
  }
  if (j.is_string()) {
    return rat_from_string(j.get<std::string>());
  }
  bad(what + ": expected \"p/q\" string or integer");
}

FGAbelianSpec parse_abelian(Json const& j, std::string const& what) {
  if (!j.is_object()) {
    bad(what + ": expected an object");
  }
  FGAbelianSpec spec;
  spec.free_rank = j.value("free_rank", 0);
  if (j.contains("torsion")) {
    for (auto const& t : j.at("torsion")) {
      spec.torsion.push_back(json_to_int(t, what + ".torsion"));
    }
  }
  if (j.contains("names")) {
    for (auto const& n : j.at("names")) {
      spec.names.push_back(n.get<std::string>());
    }
  }
  return spec;
}

AbelianVec parse_vec(Json const& j, int dim, std::string const& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    bad(what + ": expected an array of " + std::to_string(dim) +
        " coordinates");
  }
  AbelianVec v;
  for (auto const& c : j) {
    v.coords.push_back(json_to_int(c, what));
  }
  return v;
}

FiniteGroupTable parse_finite(Json const& j, std::string const& what) {
  if (!j.is_object()) {
    bad(what + ": expected an object");
  }
  if (j.contains("cyclic")) {
    int n = j.at("cyclic").get<int>();
    if (n < 1) {
      bad(what + ": cyclic order must be >= 1");
    }
    return FiniteGroupTable::cyclic(n, j.value("name", std::string("s")));
  }
  FiniteGroupTable g;
  for (auto const& n : j.at("names")) {
    g.names.push_back(n.get<std::string>());
  }
  for (auto const& row : j.at("table")) {
    std::vector<int> r;
    for (auto const& e : row) {
      r.push_back(e.get<int>());
    }
    g.table.push_back(std::move(r));
  }
  return g;
}

Element parse_element(PairContext const& ctx, Json const& j,
                      std::string const& what) {
  if (j.is_string()) {
    return ctx.canonicalize(j.get<std::string>());
  }
  if (!j.is_object()) {
    bad(what + ": expected a word string or an element object");
  }
  if (j.contains("word")) {
    return ctx.canonicalize(j.at("word").get<std::string>());
  }
  if (j.contains("matrix")) {
    auto const& m = j.at("matrix");
    if (ctx.family() == Family::RationalTriangular2) {
      if (!m.is_array() || m.size() != 2 || m[0].size() != 2 ||
          m[1].size() != 2) {
        bad(what + ": triangular2 matrices are 2x2");
      }
      if (json_to_rat(m[1][0], what) != 0 || json_to_rat(m[1][1], what) != 1) {
        bad(what + ": bottom row must be [0, 1]");
      }
      return ctx.make_tri2(json_to_rat(m[0][0], what),
                           json_to_rat(m[0][1], what));
    }
    if (ctx.family() == Family::RationalTriangular3) {
      if (!m.is_array() || m.size() != 3) {
        bad(what + ": triangular3 matrices are 3x3");
      }
      auto at = [&](int r, int c) { return json_to_rat(m[r][c], what); };
      if (at(0, 0) != 1 || at(1, 0) != 0 || at(2, 0) != 0 || at(1, 2) != 0 ||
          at(2, 1) != 0) {
        bad(what +
            ": matrix must have shape [[1,x,y],[0,f1,0],[0,0,f2]]");
      }
      return ctx.make_tri3(at(1, 1), at(2, 2), at(0, 1), at(0, 2));
    }
    bad(what + ": matrix elements are for the triangular families");
  }
  if (j.contains("vector")) {
    if (ctx.family() != Family::Semidirect) {
      bad(what + ": vector elements are for the semidirect family");
    }
    auto const& s = ctx.spec_as<SemidirectSpec>();
    auto v = parse_vec(j.at("vector"), s.dim, what + ".vector");
    Int k = j.contains("k") ? json_to_int(j.at("k"), what + ".k") : Int(0);
    return ctx.make_semidirect(v.coords, std::move(k));
  }
  bad(what + ": element object needs word, matrix, or vector");
}

PairContext::Spec parse_spec(Json const& j);

std::shared_ptr<PairContext const> build_context(Json const& j) {
  PairContext::Spec spec = parse_spec(j);

  // bare context to resolve named elements, then generators, then the real
  // thing with everything attached
  PairContext bare{spec};
  PairContext::Options options;
  if (j.contains("elements")) {
    for (auto const& [name, def] : j.at("elements").items()) {
      options.named_elements.emplace(
          name, parse_element(bare, def, "elements." + name));
    }
  }
  PairContext with_names{spec, PairContext::Options{options.named_elements,
                                                    {},
                                                    {},
                                                    options.ball_cap,
                                                    options.refute_threshold}};
  if (j.contains("gamma0_generators")) {
    for (auto const& w : j.at("gamma0_generators")) {
      options.gamma0_generators.push_back(
          parse_element(with_names, w, "gamma0_generators"));
    }
  }
  if (j.contains("gamma_generators")) {
    for (auto const& w : j.at("gamma_generators")) {
      options.gamma_generators.push_back(
          parse_element(with_names, w, "gamma_generators"));
    }
  }
  if (j.contains("caps")) {
    auto const& caps = j.at("caps");
    if (caps.contains("ball_members")) {
      options.ball_cap = caps.at("ball_members").get<std::size_t>();
    }
    if (caps.contains("refute_threshold")) {
      options.refute_threshold = caps.at("refute_threshold").get<int>();
    }
  }
  return std::make_shared<PairContext const>(std::move(spec),
                                             std::move(options));
}

PairContext::Spec parse_spec(Json const& j) {
  if (!j.is_object() || !j.contains("family")) {
    bad("config must be an object with a \"family\" field");
  }
  std::string family = j.at("family").get<std::string>();
  if (family == "free") {
    FreeGroupSpec spec;
    spec.rank = j.value("rank", 0);
    if (j.contains("names")) {
      for (auto const& n : j.at("names")) {
        spec.names.push_back(n.get<std::string>());
      }
    }
    if (j.contains("gamma0_generator")) {
      auto const& g = j.at("gamma0_generator");
      if (g.is_number_integer()) {
        spec.gamma0_index = g.get<int>();
      } else {
        std::string name = g.get<std::string>();
        auto names = spec.names.empty()
                         ? std::vector<std::string>{}
                         : spec.names;
        if (names.empty()) {
          for (int i = 0; i < spec.rank; ++i) {
            names.push_back(std::string(1, static_cast<char>('a' + i)));
          }
        }
        spec.gamma0_index = -1;
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (names[i] == name) {
            spec.gamma0_index = static_cast<int>(i);
          }
        }
        if (spec.gamma0_index < 0) {
          bad("gamma0_generator \"" + name + "\" is not a generator name");
        }
      }
    }
    return spec;
  }
  if (family == "amalgam") {
    AmalgamSpec spec;
    spec.gamma0 = parse_abelian(j.at("gamma0"), "amalgam.gamma0");
    spec.gamma1 = parse_finite(j.at("gamma1"), "amalgam.gamma1");
    spec.gamma1.validate("amalgam.gamma1");
    spec.z_in_gamma0.push_back(
        AbelianVec{std::vector<Int>(spec.gamma0.dim(), Int(0))});
    spec.z_in_gamma1.push_back(0);
    if (j.contains("z")) {
      for (auto const& entry : j.at("z")) {
        spec.z_in_gamma0.push_back(
            parse_vec(entry.at("gamma0"), spec.gamma0.dim(), "z.gamma0"));
        spec.z_in_gamma1.push_back(
            spec.gamma1.index_of(entry.at("gamma1").get<std::string>()));
      }
    }
    if (j.contains("gamma0_cyclic_word")) {
      spec.cyclic_word = j.at("gamma0_cyclic_word").get<std::string>();
    }
    return spec;
  }
  if (family == "hnn") {
    HnnSpec spec;
    spec.base = parse_abelian(j.at("base"), "hnn.base");
    spec.stable_name = j.value("stable", std::string("t"));
    // names must be resolved before parsing generator vectors
    FGAbelianSpec probe = spec.base;
    probe.validate_and_default_names("hnn.base");
    int dim = probe.dim();
    for (auto const& v : j.at("h_generators")) {
      spec.h_gens.push_back(parse_vec(v, dim, "hnn.h_generators"));
    }
    for (auto const& v : j.at("k_generators")) {
      spec.k_gens.push_back(parse_vec(v, dim, "hnn.k_generators"));
    }
    for (auto const& v : j.at("phi_images")) {
      spec.phi_images.push_back(parse_vec(v, dim, "hnn.phi_images"));
    }
    return spec;
  }
  if (family == "semidirect") {
    SemidirectSpec spec;
    spec.dim = j.at("dim").get<int>();
    spec.matrix.n = spec.dim;
    auto const& m = j.at("matrix");
    if (!m.is_array() || static_cast<int>(m.size()) != spec.dim) {
      bad("semidirect.matrix must be dim x dim");
    }
    for (auto const& row : m) {
      if (!row.is_array() || static_cast<int>(row.size()) != spec.dim) {
        bad("semidirect.matrix must be dim x dim");
      }
      for (auto const& e : row) {
        spec.matrix.a.push_back(json_to_int(e, "semidirect.matrix"));
      }
    }
    if (j.contains("names")) {
      for (auto const& n : j.at("names")) {
        spec.names.push_back(n.get<std::string>());
      }
    }
    return spec;
  }
  if (family == "triangular2") {
    Tri2Spec spec;
    auto const& n = j.at("n");
    if (n.is_string() && (n.get<std::string>() == "inf" ||
                          n.get<std::string>() == "infinity")) {
      spec.n = std::nullopt;
    } else {
      spec.n = n.get<long>();
    }
    return spec;
  }
  if (family == "triangular3") {
    return Tri3Spec{j.at("m").get<long>(), j.at("n").get<long>()};
  }
  if (family == "free-product") {
    FreeProductSpec spec;
    spec.inner = build_context(j.at("inner"));
    spec.finite = parse_finite(j.at("finite"), "free-product.finite");
    return spec;
  }
  bad("unknown family \"" + family + "\"");
}

}  // namespace

std::shared_ptr<PairContext const> context_from_json_text(
    std::string const& text) {
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (std::exception const& e) {
    throw_error(ErrorKind::ParseError,
                std::string("config is not valid JSON: ") + e.what());
  }
  return build_context(parsed);
}

LoadedConfig load_pair_config(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorKind::ConfigError, "cannot open config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  LoadedConfig out;
  out.context = context_from_json_text(bytes);
  out.digest = fnv1a64_hex(bytes);
  out.path = path;
  return out;
}

}  // namespace pairmix
