#pragma once

#include "bispec/bethe.hpp"
#include "bispec/repn.hpp"

#include <json.hpp>

#include <string>

namespace bispec {

using Json = nlohmann::json;

Json toJson(Complex v);
Json toJson(const BranchedBase& b);
Json toJson(const Poly& p);
Complex complexFromJson(const Json& j);
BranchedBase baseFromJson(const Json& j);
Poly polyFromJson(const Json& j);

Json toJson(const DiffOp& d);
Json toJson(const DiffeOp& d);
DiffOp diffOpFromJson(const Json& j);
DiffeOp diffeOpFromJson(const Json& j);

Json toJson(const QuasiPolySpace& v);
Json toJson(const QuasiExpSpace& u);
QuasiPolySpace quasiPolySpaceFromJson(const Json& j);
QuasiExpSpace quasiExpSpaceFromJson(const Json& j);

Json toJson(const BetheOrbit& o);
Json toJson(const MatrixXcd& m);
Json toJson(const EigencheckEntry& e);

GaudinProblem gaudinProblemFromJson(const Json& j);

}  // namespace bispec
