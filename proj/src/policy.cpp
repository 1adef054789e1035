#include "qgamble/policy.hpp"

#include <map>
#include <stdexcept>

#include "qgamble/numfmt.hpp"

namespace qgamble {

namespace {

void check_range(double v, double lo, double hi, const std::string& what) {
  if (!(v >= lo && v <= hi)) {
    throw std::invalid_argument("policy " + what + " out of range: " +
                                fmt_double(v));
  }
}

std::map<std::string, double, std::less<>> parse_kv(std::string_view body,
                                                    std::string_view spec) {
  std::map<std::string, double, std::less<>> kv;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find(',', start);
    if (end == std::string_view::npos) end = body.size();
    const std::string_view item = body.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("malformed policy spec: '" +
                                  std::string(spec) + "'");
    }
    kv[std::string(item.substr(0, eq))] = parse_real(item.substr(eq + 1));
    start = end + 1;
  }
  return kv;
}

}  // namespace

AlicePolicy parse_alice_policy(std::string_view spec) {
  if (spec == "nash") return NashHonest{};
  if (spec.rfind("fixed:", 0) == 0) {
    const double alpha = parse_real(spec.substr(6));
    check_range(alpha, 0.0, 1.0, "alpha");
    return FixedAlpha{alpha};
  }
  if (spec.rfind("spotcheck:", 0) == 0) {
    const auto kv = parse_kv(spec.substr(10), spec);
    if (!kv.count("q") || !kv.count("alpha")) {
      throw std::invalid_argument(
          "spotcheck needs q= and alpha= (penalty= optional): '" +
          std::string(spec) + "'");
    }
    SpotCheck p;
    p.q = kv.at("q");
    p.alpha_otherwise = kv.at("alpha");
    p.penalty = kv.count("penalty") ? kv.at("penalty") : 1.0;
    check_range(p.q, 0.0, 1.0, "q");
    check_range(p.alpha_otherwise, 0.0, 1.0, "alpha");
    if (!(p.penalty >= 0.0)) {
      throw std::invalid_argument("penalty must be >= 0");
    }
    return p;
  }
  throw std::invalid_argument("unknown alice policy: '" + std::string(spec) +
                              "'");
}

BobPolicy parse_bob_policy(std::string_view spec) {
  if (spec == "nash") return NashHonest{};
  if (spec.rfind("fixed:", 0) == 0) {
    const double beta = parse_real(spec.substr(6));
    check_range(beta, 0.0, 1.0, "beta");
    return FixedBeta{beta};
  }
  if (spec.rfind("liar:", 0) == 0) {
    const double beta = parse_real(spec.substr(5));
    check_range(beta, 0.0, 1.0, "beta");
    return Liar{beta};
  }
  throw std::invalid_argument("unknown bob policy: '" + std::string(spec) +
                              "'");
}

std::string describe(const AlicePolicy& policy) {
  if (std::holds_alternative<NashHonest>(policy)) return "nash";
  if (const auto* f = std::get_if<FixedAlpha>(&policy)) {
    return "fixed:" + fmt_double(f->alpha);
  }
  const auto& s = std::get<SpotCheck>(policy);
  return "spotcheck:q=" + fmt_double(s.q) +
         ",alpha=" + fmt_double(s.alpha_otherwise) +
         ",penalty=" + fmt_double(s.penalty);
}

std::string describe(const BobPolicy& policy) {
  if (std::holds_alternative<NashHonest>(policy)) return "nash";
  if (const auto* f = std::get_if<FixedBeta>(&policy)) {
    return "fixed:" + fmt_double(f->beta);
  }
  return "liar:" + fmt_double(std::get<Liar>(policy).beta);
}

}  // namespace qgamble
