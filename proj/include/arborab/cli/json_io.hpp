#pragma once

#include "json.hpp"

#include "arborab/dynamo/dynamics.hpp"
#include "arborab/exactnum/factor.hpp"
#include "arborab/heights/heights.hpp"
#include "arborab/obstruct/certificate.hpp"

namespace arborab::cli {

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const Integer& n);
json to_json(const exactnum::FactoredInteger& f);
exactnum::FactoredInteger factored_from_json(const json& j);

/// Integer-string array, low to high.
json to_json(const heights::IntPolynomial& p);
heights::IntPolynomial polynomial_from_json(const json& j);

/// {"value", "error", "method"}; reals as decimal strings.
json to_json(const heights::HeightEstimate& e, int digits = 30);
heights::HeightEstimate estimate_from_json(const json& j, mpfr_prec_t prec);
json to_json(const heights::Real& x, int digits = 30);

json to_json(const dynamo::OrbitReport& report);
json to_json(const dynamo::PcfCertificate& cert);
json to_json(const obstruct::AbelianityCertificate& cert);

}  // namespace arborab::cli
