#include "pairmix/fourier.hpp"

#include "pairmix/parallel.hpp"

#include <nlohmann/json.hpp>

namespace pairmix {

void GroupOperator::add_term(Element const& g, ComplexRational const& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = support.emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      support.erase(it);
    }
  }
}

Rat GroupOperator::norm_sq() const {
  Rat out(0);
  for (auto const& [g, c] : support) {
    out += c.norm_sq();
  }
  return out;
}

GroupOperator lambda_op(Element const& g) {
  GroupOperator x;
  x.support.emplace(g, ComplexRational(Rat(1)));
  return x;
}

GroupOperator op_add(GroupOperator const& a, GroupOperator const& b) {
  GroupOperator out = a;
  for (auto const& [g, c] : b.support) {
    out.add_term(g, c);
  }
  return out;
}

GroupOperator op_sub(GroupOperator const& a, GroupOperator const& b) {
  GroupOperator out = a;
  for (auto const& [g, c] : b.support) {
    out.add_term(g, ComplexRational(Rat(0)) - c);
  }
  return out;
}

GroupOperator op_scale(ComplexRational const& c, GroupOperator const& a) {
  GroupOperator out;
  for (auto const& [g, coeff] : a.support) {
    out.add_term(g, c * coeff);
  }
  return out;
}

GroupOperator convolve(PairContext const& ctx, GroupOperator const& x,
                       GroupOperator const& y) {
  GroupOperator out;
  for (auto const& [g1, c1] : x.support) {
    for (auto const& [g2, c2] : y.support) {
      out.add_term(ctx.mul(g1, g2), c1 * c2);
    }
  }
  return out;
}

GroupOperator adjoint(PairContext const& ctx, GroupOperator const& x) {
  GroupOperator out;
  for (auto const& [g, c] : x.support) {
    out.add_term(ctx.inv(g), c.conj());
  }
  return out;
}

ComplexRational trace(PairContext const& ctx, GroupOperator const& x) {
  auto it = x.support.find(ctx.identity());
  return it == x.support.end() ? ComplexRational(Rat(0)) : it->second;
}

GroupOperator project_onto_gamma0(PairContext const& ctx,
                                  GroupOperator const& x) {
  GroupOperator out;
  for (auto const& [g, c] : x.support) {
    if (ctx.is_in_gamma0(g)) {
      out.support.emplace(g, c);
    }
  }
  return out;
}

Rat mixing_defect(PairContext const& ctx, GroupOperator const& x,
                  GroupOperator const& v, GroupOperator const& y) {
  for (auto const& [g, c] : v.support) {
    if (!ctx.is_in_gamma0(g)) {
      throw_error(ErrorKind::SupportViolation,
                  "v must be supported in Gamma_0 (offending element: " +
                      ctx.to_word_string(g) + ")");
    }
  }
  GroupOperator xvy = convolve(ctx, convolve(ctx, x, v), y);
  GroupOperator lhs = project_onto_gamma0(ctx, xvy);
  GroupOperator rhs = convolve(
      ctx, convolve(ctx, project_onto_gamma0(ctx, x), v),
      project_onto_gamma0(ctx, y));
  return op_sub(lhs, rhs).norm_sq();
}

namespace {

// || E(v x v* y) - E(x) E(y) ||_2^2 with v unitary in the subalgebra; equal
// to the translation form by commutativity of the subalgebra, and checked
// against it exactly at every sample.
Rat conjugation_defect(PairContext const& ctx, GroupOperator const& x,
                       Element const& gamma, GroupOperator const& y) {
  GroupOperator v = lambda_op(ctx.inv(gamma));
  GroupOperator vstar = lambda_op(gamma);
  GroupOperator inner =
      convolve(ctx, convolve(ctx, convolve(ctx, v, x), vstar), y);
  GroupOperator lhs = project_onto_gamma0(ctx, inner);
  GroupOperator rhs = convolve(ctx, project_onto_gamma0(ctx, x),
                               project_onto_gamma0(ctx, y));
  return op_sub(lhs, rhs).norm_sq();
}

}  // namespace

DefectCurve strong_mixing_curve(PairContext const& ctx, GroupOperator const& x,
                                GroupOperator const& y, int radius) {
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, radius);
  DefectCurve curve;
  curve.x_desc = operator_to_string(ctx, x);
  curve.y_desc = operator_to_string(ctx, y);
  curve.entries.resize(ball.members.size());
  parallel_for(ball.members.size(), [&](std::size_t i) {
    Element const& gamma = ball.members[i];
    Rat translation = mixing_defect(ctx, x, lambda_op(gamma), y);
    Rat conjugation = conjugation_defect(ctx, x, gamma, y);
    if (translation != conjugation) {
      throw_error(ErrorKind::InternalError,
                  "conjugation and translation defects disagree at gamma = " +
                      ctx.to_word_string(gamma));
    }
    curve.entries[i] = DefectCurve::Entry{ctx.to_word_string(gamma), gamma,
                                          std::nullopt, translation};
  });
  return curve;
}

std::optional<Element> weak_mixing_witness(PairContext const& ctx,
                                           std::vector<GroupOperator> const& f,
                                           int radius, Rat const& eps_sq) {
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, radius);
  for (auto const& gamma : ball.members) {
    GroupOperator v = lambda_op(gamma);
    bool good = true;
    for (auto const& x : f) {
      for (auto const& y : f) {
        if (mixing_defect(ctx, x, v, y) > eps_sq) {
          good = false;
          break;
        }
      }
      if (!good) {
        break;
      }
    }
    if (good) {
      return gamma;
    }
  }
  return std::nullopt;
}

DefectCurve ah_curve(PairContext const& ctx, GroupOperator const& x,
                     Element const& t, GroupOperator const& y, long k_max) {
  if (!ctx.is_in_gamma0(t)) {
    throw_error(ErrorKind::NotInGamma0,
                "ah-curve needs t in Gamma_0, got " + ctx.to_word_string(t));
  }
  DefectCurve curve;
  curve.x_desc = operator_to_string(ctx, x);
  curve.y_desc = operator_to_string(ctx, y);
  curve.entries.resize(2 * static_cast<std::size_t>(k_max) + 1);
  parallel_for(curve.entries.size(), [&](std::size_t i) {
    long k = static_cast<long>(i) - k_max;
    Element tk = ctx.pow(t, Int(k));
    Rat d = mixing_defect(ctx, x, lambda_op(tk), y);
    curve.entries[i] =
        DefectCurve::Entry{"k=" + std::to_string(k), std::nullopt, k, d};
  });
  return curve;
}

std::vector<Rat> coefficient_decay(PairContext const& ctx,
                                   GroupOperator const& x,
                                   std::vector<Element> const& s) {
  std::vector<Rat> out;
  for (auto const& g : s) {
    auto it = x.support.find(ctx.inv(g));
    out.push_back(it == x.support.end() ? Rat(0) : it->second.norm_sq());
  }
  return out;
}

GroupOperator parse_operator(PairContext const& ctx, std::string const& text) {
  std::string trimmed = text;
  auto first = trimmed.find_first_not_of(" \t");
  if (first == std::string::npos) {
    throw_error(ErrorKind::ParseError, "empty operator");
  }
  if (trimmed[first] != '[') {
    return lambda_op(ctx.canonicalize(text));
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (std::exception const& e) {
    throw_error(ErrorKind::ParseError,
                std::string("bad operator literal: ") + e.what());
  }
  if (!parsed.is_array()) {
    throw_error(ErrorKind::ParseError, "operator literal must be an array");
  }
  GroupOperator out;
  for (auto const& term : parsed) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
        !term[1].is_string()) {
      throw_error(ErrorKind::ParseError,
                  "operator terms must be [\"coefficient\", \"word\"] pairs");
    }
    out.add_term(ctx.canonicalize(term[1].get<std::string>()),
                 complex_from_string(term[0].get<std::string>()));
  }
  return out;
}

std::string operator_to_string(PairContext const& ctx,
                               GroupOperator const& x) {
  if (x.support.empty()) {
    return "0";
  }
  std::string out;
  for (auto const& [g, c] : x.support) {
    if (!out.empty()) {
      out += " + ";
    }
    out += "(" + complex_to_string(c) + ")*[" + ctx.to_word_string(g) + "]";
  }
  return out;
}

}  // namespace pairmix
