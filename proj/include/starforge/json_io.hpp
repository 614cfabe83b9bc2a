#pragma once

#include <json.hpp>

#include "starforge/expression.hpp"

namespace starforge {

using Json = nlohmann::ordered_json;

// Integers that do not fit in 64 bits are written as decimal strings.
Json to_json(const ExactComplex& c);  // [re_num, re_den, im_num, im_den]
Json to_json(const PiRational& v);
Json to_json(const FormalScalar& s);
Json to_json(const PiSeries& s);
Json to_json(const GaussPoly& f);
Json to_json(const FormalFunction& f);
Json to_json(const FormalFunctional& t);

Json to_json(const AxiomReport& r);
Json to_json(const ClosednessReport& r);
Json to_json(const PositivityReport& r);
Json to_json(const Normalization& n, const PhaseContext& ctx);
Json to_json(const EigenReport& r);
Json to_json(const RegionReport& r, const PhaseContext& ctx);

ExactComplex complex_from_json(const Json& j);
FormalScalar scalar_from_json(const Json& j);
GaussPoly gauss_from_json(const Json& j, int pairs);
FormalFunction function_from_json(const Json& j, int pairs);

}  // namespace starforge
