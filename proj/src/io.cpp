#include "bispec/io.hpp"

namespace bispec {

Json toJson(Complex v) { return Json::array({v.real(), v.imag()}); }

Json toJson(const BranchedBase& b) {
  return Json::array({b.value.real(), b.value.imag(), b.arg});
}

Json toJson(const Poly& p) {
  Json out = Json::array();
  for (const Complex& c : p.coeffs()) out.push_back(toJson(c));
  return out;
}

Complex complexFromJson(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.at(0).get<double>(), j.size() > 1 ? j.at(1).get<double>() : 0.0);
}

BranchedBase baseFromJson(const Json& j) {
  if (j.is_number()) return BranchedBase(Complex(j.get<double>(), 0.0));
  const Complex v = complexFromJson(j);
  if (j.is_array() && j.size() >= 3) return BranchedBase(v, j.at(2).get<double>());
  return BranchedBase(v);
}

Poly polyFromJson(const Json& j) {
  std::vector<Complex> cs;
  for (const auto& c : j) cs.push_back(complexFromJson(c));
  return Poly(std::move(cs));
}

Json toJson(const DiffOp& d) {
  Json coeffs = Json::array();
  for (const Poly& c : d.logCoeffs) coeffs.push_back(toJson(c));
  return Json{{"order", d.order}, {"coeffs", coeffs}, {"basis", "log"}};
}

Json toJson(const DiffeOp& d) {
  Json coeffs = Json::array();
  for (const Poly& c : d.coeffs) coeffs.push_back(toJson(c));
  return Json{{"order", d.order}, {"coeffs", coeffs}, {"basis", "tau"}};
}

DiffOp diffOpFromJson(const Json& j) {
  if (j.at("basis").get<std::string>() != "log") throw Error("diffOpFromJson: basis != log");
  std::vector<Poly> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(polyFromJson(c));
  DiffOp d;
  d.order = j.at("order").get<int>();
  d.logCoeffs = std::move(cs);
  if (static_cast<int>(d.logCoeffs.size()) != d.order + 1)
    throw Error("diffOpFromJson: coefficient count mismatch");
  return d;
}

DiffeOp diffeOpFromJson(const Json& j) {
  if (j.at("basis").get<std::string>() != "tau") throw Error("diffeOpFromJson: basis != tau");
  std::vector<Poly> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(polyFromJson(c));
  DiffeOp d;
  d.order = j.at("order").get<int>();
  d.coeffs = std::move(cs);
  if (static_cast<int>(d.coeffs.size()) != d.order + 1)
    throw Error("diffeOpFromJson: coefficient count mismatch");
  return d;
}

Json toJson(const QuasiPolySpace& v) {
  Json groups = Json::array();
  for (const auto& g : v.groups) {
    Json polys = Json::array();
    Json degrees = Json::array();
    for (const auto& p : g.polys) {
      polys.push_back(toJson(p));
      degrees.push_back(p.degree());
    }
    groups.push_back(Json{{"exponent", toJson(g.lambda)}, {"polys", polys}});
  }
  return Json{{"kind", "V"}, {"groups", groups}};
}

Json toJson(const QuasiExpSpace& u) {
  Json groups = Json::array();
  for (const auto& g : u.groups) {
    Json polys = Json::array();
    for (const auto& p : g.polys) polys.push_back(toJson(p));
    groups.push_back(Json{{"base", toJson(g.base)}, {"polys", polys}});
  }
  return Json{{"kind", "U"}, {"groups", groups}};
}

QuasiPolySpace quasiPolySpaceFromJson(const Json& j) {
  if (j.at("kind").get<std::string>() != "V") throw Error("quasiPolySpaceFromJson: kind != V");
  QuasiPolySpace v;
  for (const auto& g : j.at("groups")) {
    QuasiPolyGroup grp;
    grp.lambda = complexFromJson(g.at("exponent"));
    for (const auto& p : g.at("polys")) grp.polys.push_back(polyFromJson(p));
    v.groups.push_back(std::move(grp));
  }
  return v;
}

QuasiExpSpace quasiExpSpaceFromJson(const Json& j) {
  if (j.at("kind").get<std::string>() != "U") throw Error("quasiExpSpaceFromJson: kind != U");
  QuasiExpSpace u;
  for (const auto& g : j.at("groups")) {
    QuasiExpGroup grp;
    grp.base = baseFromJson(g.at("base"));
    for (const auto& p : g.at("polys")) grp.polys.push_back(polyFromJson(p));
    u.groups.push_back(std::move(grp));
  }
  return u;
}

Json toJson(const BetheOrbit& o) {
  Json levels = Json::array();
  for (const auto& l : o.levels) {
    Json lv = Json::array();
    for (Complex r : l) lv.push_back(toJson(r));
    levels.push_back(lv);
  }
  Json ys = Json::array();
  for (const auto& y : o.yTuple) ys.push_back(toJson(y));
  return Json{{"levels", levels},
              {"yTuple", ys},
              {"residual", o.residualNorm},
              {"admissible", o.admissible}};
}

Json toJson(const MatrixXcd& m) {
  Json data = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) data.push_back(toJson(m(r, c)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json toJson(const EigencheckEntry& e) {
  return Json{{"hamiltonian", e.hamiltonian},
              {"eigenvalue", toJson(e.eigenvalue)},
              {"residual", e.residual}};
}

GaudinProblem gaudinProblemFromJson(const Json& j) {
  GaudinProblem p;
  for (const auto& v : j.at("n")) p.n.push_back(v.get<int>());
  for (const auto& v : j.at("m")) p.m.push_back(v.get<int>());
  for (const auto& v : j.at("lambda")) p.lambda.push_back(complexFromJson(v));
  for (const auto& v : j.at("z")) p.z.push_back(baseFromJson(v));
  if (j.contains("N") && j.at("N").get<int>() != p.bigN())
    throw Error("problem: N does not match n");
  p.validate();
  return p;
}

}  // namespace bispec
