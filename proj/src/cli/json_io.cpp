#include "arborab/cli/json_io.hpp"

namespace arborab::cli {

using exactnum::to_string;

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& n) { return n.get_str(); }

json to_json(const exactnum::FactoredInteger& f) {
  json factors = json::object();
  for (const auto& [p, e] : f.factors) factors[p.get_str()] = e;
  return {{"sign", f.sign}, {"factors", factors}};
}

exactnum::FactoredInteger factored_from_json(const json& j) {
  exactnum::FactoredInteger f;
  f.sign = j.at("sign").get<int>();
  for (const auto& [p, e] : j.at("factors").items()) f.factors.emplace(exactnum::parse_integer(p), e.get<unsigned>());
  return f;
}

json to_json(const heights::IntPolynomial& p) {
  json out = json::array();
  for (const auto& a : p.coefficients()) out.push_back(a.get_str());
  return out;
}

heights::IntPolynomial polynomial_from_json(const json& j) {
  std::vector<Integer> coefficients;
  for (const auto& a : j) coefficients.push_back(exactnum::parse_integer(a.get<std::string>()));
  return heights::IntPolynomial(std::move(coefficients));
}

json to_json(const heights::Real& x, int digits) { return x.to_string(digits); }

json to_json(const heights::HeightEstimate& e, int digits) {
  return {{"value", e.value.to_string(digits)}, {"error", e.error.to_string(6)}, {"method", to_string(e.method)}};
}

heights::HeightEstimate estimate_from_json(const json& j, mpfr_prec_t prec) {
  auto parse = [&](const std::string& text) {
    heights::Real x(prec);
    if (mpfr_set_str(x.get(), text.c_str(), 10, MPFR_RNDN) != 0) throw ParseError("bad real: " + text);
    return x;
  };
  heights::HeightEstimate e{parse(j.at("value")), parse(j.at("error")), heights::Method::Exact};
  const std::string method = j.at("method");
  if (method == "EscapeTail") e.method = heights::Method::EscapeTail;
  else if (method == "RootFinder") e.method = heights::Method::RootFinder;
  else if (method != "Exact") throw ParseError("bad method: " + method);
  // The stored error is rounded to six digits; widen by one unit there.
  mpfr_mul_d(e.error.get(), e.error.get(), 1.00001, MPFR_RNDU);
  return e;
}

json to_json(const dynamo::OrbitReport& report) {
  json points = json::array();
  for (const auto& x : report.points) points.push_back(to_string(x));
  json outcome = std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, dynamo::Cycle>) {
          return {{"kind", "Cycle"}, {"preperiod", o.preperiod}, {"period", o.period}};
        } else if constexpr (std::is_same_v<T, dynamo::Escaped>) {
          return {{"kind", "Escaped"}, {"step", o.step}};
        } else {
          return {{"kind", "BudgetExhausted"}};
        }
      },
      report.outcome);
  return {{"points", points}, {"outcome", outcome}};
}

json to_json(const dynamo::PcfCertificate& cert) {
  static constexpr const char* reasons[] = {"CycleFound", "Escaped", "DenominatorGrowth"};
  json out = to_json(cert.orbit);
  out["pcf"] = cert.pcf;
  out["reason"] = reasons[static_cast<int>(cert.reason)];
  return out;
}

namespace {

json witness_json(const obstruct::SquareClassWitness& w) {
  json values = json::array();
  for (const auto& v : w.values) values.push_back(to_string(v));
  json classes = nullptr;
  if (!w.classes.empty()) {
    classes = json::array();
    for (const auto& c : w.classes) classes.push_back(c.get_str());
  }
  return {{"indices", w.indices}, {"values", values}, {"classes", classes}, {"dimension", w.dimension}};
}

json reason_json(const obstruct::Reason& reason) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, obstruct::SpecialPair>) {
          return {{"kind", dynamo::to_string(r.kind)}};
        } else if constexpr (std::is_same_v<T, obstruct::SquareClassWitness>) {
          return witness_json(r);
        } else if constexpr (std::is_same_v<T, obstruct::LocalSieveWitness>) {
          return {{"prime", r.prime.get_str()},
                  {"side", r.side == obstruct::SieveSide::Alpha ? "alpha" : "alpha+1"},
                  {"valuation", r.valuation}};
        } else if constexpr (std::is_same_v<T, obstruct::BackwardTransfer>) {
          return {{"beta", to_string(r.beta)}, {"depth", r.depth}, {"inner", witness_json(r.inner)}};
        } else if constexpr (std::is_same_v<T, obstruct::TheoreticalPCF>) {
          return {{"escape", to_json(r.escape)}};
        } else if constexpr (std::is_same_v<T, obstruct::KummerWitness>) {
          return {{"map", r.map == obstruct::KummerMap::Power ? "power" : "chebyshev"},
                  {"w", {{"a", to_string(r.w.a)}, {"b", to_string(r.w.b)}, {"D", r.w.D.get_str()}}},
                  {"roots_of_unity", r.roots_of_unity},
                  {"level", r.level}};
        } else {
          return json::object();
        }
      },
      reason);
}

}  // namespace

json to_json(const obstruct::AbelianityCertificate& cert) {
  json out = {{"verdict", obstruct::to_string(cert.verdict)},
              {"reason", obstruct::reason_name(cert.reason)},
              {"parameters", {{"c", to_string(cert.parameters.c)}, {"alpha", to_string(cert.parameters.alpha)}}},
              {"depth_cap", cert.depth_cap},
              {"witness", reason_json(cert.reason)}};
  if (const auto* w = std::get_if<obstruct::SquareClassWitness>(&cert.reason)) out["indices"] = w->indices;
  return out;
}

}  // namespace arborab::cli
