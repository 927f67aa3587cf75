#include "stokesrec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stokesrec/errors.hpp"

namespace stokesrec {

using nlohmann::json;

namespace {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw parse_error("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(cplx_to_json(v[i]));
  return out;
}

Eigen::VectorXcd vec_from_json(const json& j) {
  Eigen::VectorXcd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = cplx_from_json(j[i]);
  return v;
}

json real_vec_to_json(const std::vector<double>& v) { return json(v); }

json curve_to_json(const ParamCurve& c, int n) {
  json j;
  j["kind"] = to_string(c.kind());
  j["center"] = cplx_to_json(c.center());
  j["n"] = n;
  const auto& p = c.params();
  switch (c.kind()) {
    case CurveKind::circle:
      j["radius"] = p[0];
      break;
    case CurveKind::ellipse:
      j["a"] = p[0];
      j["b"] = p[1];
      break;
    case CurveKind::radial_cosine:
      j["r0"] = p[0];
      j["amplitude"] = p[1];
      j["frequency"] = static_cast<int>(p[2]);
      break;
    case CurveKind::polygon_rounded:
      j["sides"] = static_cast<int>(p[0]);
      j["circumradius"] = p[1];
      j["angle0"] = p[2];
      j["rounding"] = p[3];
      break;
    case CurveKind::custom_samples: {
      json samples = json::array();
      for (const cplx& s : c.samples()) samples.push_back(cplx_to_json(s));
      j["samples"] = samples;
      break;
    }
  }
  return j;
}

ScenarioEntry curve_from_json(const json& j) {
  const CurveKind kind = curve_kind_from_string(j.at("kind").get<std::string>());
  const cplx center = j.contains("center") ? cplx_from_json(j.at("center")) : cplx(0);
  ScenarioEntry entry;
  entry.n = j.value("n", 256);
  switch (kind) {
    case CurveKind::circle:
      entry.curve = ParamCurve::circle(center, j.at("radius").get<double>());
      break;
    case CurveKind::ellipse:
      entry.curve = ParamCurve::ellipse(center, j.at("a").get<double>(), j.at("b").get<double>());
      break;
    case CurveKind::radial_cosine:
      entry.curve = ParamCurve::radial_cosine(center, j.at("r0").get<double>(),
                                              j.at("amplitude").get<double>(),
                                              j.at("frequency").get<int>());
      break;
    case CurveKind::polygon_rounded:
      entry.curve = ParamCurve::polygon_rounded(center, j.at("sides").get<int>(),
                                                j.at("circumradius").get<double>(),
                                                j.value("angle0", 0.0), j.value("rounding", 0.02));
      break;
    case CurveKind::custom_samples: {
      std::vector<cplx> samples;
      for (const auto& s : j.at("samples")) samples.push_back(cplx_from_json(s));
      entry.curve = ParamCurve::custom_samples(std::move(samples));
      break;
    }
  }
  return entry;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input_error("cannot write '" + path + "'");
  out << text;
}

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("scenario: ") + e.what());
  }
  Scenario s;
  try {
    const auto outer = curve_from_json(j.at("outer"));
    s.outer = outer;
    if (j.contains("obstacles"))
      for (const auto& o : j.at("obstacles")) s.obstacles.push_back(curve_from_json(o));
    s.margin = j.value("margin", 0.02);
  } catch (const json::exception& e) {
    throw parse_error(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario parse_scenario(const std::string& path) {
  return parse_scenario_text(read_text_file(path));
}

std::string scenario_to_text(const Scenario& s) {
  json j;
  j["outer"] = curve_to_json(s.outer.curve, s.outer.n);
  j["obstacles"] = json::array();
  for (const auto& o : s.obstacles) j["obstacles"].push_back(curve_to_json(o.curve, o.n));
  j["margin"] = s.margin;
  return j.dump(2) + "\n";
}

void save_measurements(const MeasurementSet& ms, const std::string& path) {
  json j;
  j["format"] = "stokesrec-measurements/1";
  j["m"] = ms.m;
  j["kappa0"] = ms.kc.kappa0;
  j["kappa1"] = ms.kc.kappa1;
  j["scenario_hash"] = ms.scenario_hash;
  j["noise"] = ms.noise_level;
  j["seed"] = ms.seed;

  const BoundaryMesh& mesh = *ms.gamma0;
  json g;
  g["curve"] = curve_to_json(mesh.curve, mesh.size());
  g["theta"] = real_vec_to_json(mesh.theta);
  g["speed"] = real_vec_to_json(mesh.speed);
  g["curvature"] = real_vec_to_json(mesh.curvature);
  g["quad_w"] = real_vec_to_json(mesh.quad_w);
  json nodes = json::array(), normals = json::array(), tangents = json::array();
  for (const cplx& p : mesh.nodes) nodes.push_back(cplx_to_json(p));
  for (const cplx& p : mesh.normals) normals.push_back(cplx_to_json(p));
  for (const cplx& p : mesh.tangents) tangents.push_back(cplx_to_json(p));
  g["nodes"] = nodes;
  g["normals"] = normals;
  g["tangents"] = tangents;
  j["gamma0"] = g;

  json fields = json::array();
  for (int k = 0; k < ms.count(); ++k) {
    json f;
    f["f_d"] = vec_to_json(ms.f[k].dirichlet_part);
    f["f_n"] = vec_to_json(ms.f[k].normal_part);
    f["q_n"] = vec_to_json(ms.q0[k].normal_part);
    f["q_d"] = vec_to_json(ms.q0[k].dirichlet_part);
    fields.push_back(std::move(f));
  }
  j["fields"] = fields;
  write_text_file(path, j.dump() + "\n");
}

MeasurementSet load_measurements(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw parse_error(std::string("measurements: ") + e.what());
  }
  try {
    if (j.value("format", "") != "stokesrec-measurements/1")
      throw parse_error("measurements: unknown format tag");
    MeasurementSet ms;
    ms.m = j.at("m").get<int>();
    ms.kc.kappa0 = j.at("kappa0").get<double>();
    ms.kc.kappa1 = j.at("kappa1").get<double>();
    ms.scenario_hash = j.value("scenario_hash", "");
    ms.noise_level = j.value("noise", 0.0);
    ms.seed = j.value("seed", std::uint64_t{0});

    const json& g = j.at("gamma0");
    auto mesh = std::make_shared<BoundaryMesh>();
    const ScenarioEntry entry = curve_from_json(g.at("curve"));
    mesh->curve = entry.curve;
    mesh->theta = g.at("theta").get<std::vector<double>>();
    mesh->speed = g.at("speed").get<std::vector<double>>();
    mesh->curvature = g.at("curvature").get<std::vector<double>>();
    mesh->quad_w = g.at("quad_w").get<std::vector<double>>();
    for (const auto& p : g.at("nodes")) mesh->nodes.push_back(cplx_from_json(p));
    for (const auto& p : g.at("normals")) mesh->normals.push_back(cplx_from_json(p));
    for (const auto& p : g.at("tangents")) mesh->tangents.push_back(cplx_from_json(p));
    ms.gamma0 = mesh;

    for (const auto& f : j.at("fields")) {
      BoundaryField ft = BoundaryField::zero(ms.gamma0, BoundaryField::Role::trace);
      ft.dirichlet_part = vec_from_json(f.at("f_d"));
      ft.normal_part = vec_from_json(f.at("f_n"));
      BoundaryField q = BoundaryField::zero(ms.gamma0, BoundaryField::Role::density);
      q.normal_part = vec_from_json(f.at("q_n"));
      q.dirichlet_part = vec_from_json(f.at("q_d"));
      ms.f.push_back(std::move(ft));
      ms.q0.push_back(std::move(q));
    }
    if (ms.count() != 2 * ms.m - 1)
      throw parse_error("measurements: field count does not match 2m-1");
    return ms;
  } catch (const json::exception& e) {
    throw parse_error(std::string("measurements: ") + e.what());
  }
}

std::string moments_header_path(const std::string& csv_path) {
  const auto dotpos = csv_path.rfind('.');
  const std::string base =
      (dotpos == std::string::npos) ? csv_path : csv_path.substr(0, dotpos);
  return base + ".json";
}

void save_moments(const MomentTable& table, const std::string& csv_path) {
  std::string csv = "# j,k,re,im\n";
  char buf[128];
  for (int j = 0; j < table.rows(); ++j)
    for (int k = 0; k < table.cols(); ++k) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g\n", j, k, table.vals(j, k).real(),
                    table.vals(j, k).imag());
      csv += buf;
    }
  write_text_file(csv_path, csv);

  json h;
  h["format"] = "stokesrec-moments/1";
  h["m"] = table.m;
  h["rows"] = table.rows();
  h["cols"] = table.cols();
  h["provenance"] = table.provenance;
  h["diagnostics"] = table.diagnostics;
  write_text_file(moments_header_path(csv_path), h.dump(2) + "\n");
}

MomentTable load_moments(const std::string& csv_path) {
  MomentTable table;
  json h;
  try {
    h = json::parse(read_text_file(moments_header_path(csv_path)));
    table.m = h.value("m", 0);
    table.provenance = h.value("provenance", "");
    if (h.contains("diagnostics"))
      for (auto& [k, v] : h.at("diagnostics").items()) table.diagnostics[k] = v.get<double>();
    const int rows = h.at("rows").get<int>();
    const int cols = h.at("cols").get<int>();
    table.vals = Eigen::MatrixXcd::Zero(rows, cols);
  } catch (const json::exception& e) {
    throw parse_error(std::string("moments header: ") + e.what());
  }

  std::istringstream in(read_text_file(csv_path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    int j, k;
    double re, im;
    if (std::sscanf(line.c_str(), "%d,%d,%lg,%lg", &j, &k, &re, &im) != 4)
      throw parse_error("moments csv: bad row '" + line + "'");
    if (j < 0 || k < 0 || j >= table.rows() || k >= table.cols())
      throw parse_error("moments csv: index out of range");
    table.vals(j, k) = cplx(re, im);
  }
  return table;
}

void save_prony(const PronySolution& sol, const std::string& path) {
  json j;
  j["format"] = "stokesrec-prony/1";
  j["requested_order"] = sol.requested_order;
  j["effective_order"] = sol.effective_order;
  j["nodes"] = vec_to_json(sol.nodes);
  j["weights"] = std::vector<double>(sol.weights.data(), sol.weights.data() + sol.weights.size());
  j["weights_full"] = vec_to_json(sol.weights_full);
  j["diagnostics"] = {{"pencil_cond", sol.pencil_cond},
                      {"vandermonde_residual", sol.vandermonde_residual},
                      {"max_imag_weight", sol.max_imag_weight}};
  j["warnings"] = sol.warnings;
  write_text_file(path, j.dump(2) + "\n");
}

PronySolution load_prony(const std::string& path) {
  try {
    const json j = json::parse(read_text_file(path));
    if (j.value("format", "") != "stokesrec-prony/1")
      throw parse_error("prony: unknown format tag");
    PronySolution sol;
    sol.requested_order = j.at("requested_order").get<int>();
    sol.effective_order = j.at("effective_order").get<int>();
    sol.nodes = vec_from_json(j.at("nodes"));
    const auto w = j.at("weights").get<std::vector<double>>();
    sol.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    sol.weights_full = vec_from_json(j.at("weights_full"));
    sol.pencil_cond = j.at("diagnostics").value("pencil_cond", 0.0);
    sol.vandermonde_residual = j.at("diagnostics").value("vandermonde_residual", 0.0);
    sol.max_imag_weight = j.at("diagnostics").value("max_imag_weight", 0.0);
    sol.warnings = j.value("warnings", std::vector<std::string>{});
    return sol;
  } catch (const json::exception& e) {
    throw parse_error(std::string("prony: ") + e.what());
  }
}

void save_contours(const std::vector<Contour>& contours, const std::string& path) {
  std::string csv = "# level,vertex,x,y\n";
  char buf[160];
  for (const auto& c : contours) {
    int v = 0;
    for (const cplx& p : c.points) {
      std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%.17g\n", c.level, v++, p.real(), p.imag());
      csv += buf;
    }
    if (c.closed && !c.points.empty()) {
      std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%.17g\n", c.level, v,
                    c.points.front().real(), c.points.front().imag());
      csv += buf;
    }
  }
  write_text_file(path, csv);
}

std::vector<Contour> load_contours(const std::string& path) {
  std::vector<Contour> out;
  std::istringstream in(read_text_file(path));
  std::string line;
  Contour current;
  bool has_current = false;
  auto finish = [&]() {
    if (!has_current) return;
    if (current.points.size() >= 2 &&
        std::abs(current.points.front() - current.points.back()) == 0) {
      current.closed = true;
      current.points.pop_back();
    }
    out.push_back(std::move(current));
    current = Contour{};
    has_current = false;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double level, x, y;
    int v;
    if (std::sscanf(line.c_str(), "%lg,%d,%lg,%lg", &level, &v, &x, &y) != 4)
      throw parse_error("contours csv: bad row '" + line + "'");
    if (v == 0) finish();
    if (!has_current) {
      current.level = level;
      has_current = true;
    }
    current.points.emplace_back(x, y);
  }
  finish();
  return out;
}

void save_grid_csv(const GridField& field, const std::string& path) {
  std::string csv = "# x,y,value\n";
  char buf[128];
  for (int j = 0; j < field.spec.ny; ++j)
    for (int i = 0; i < field.spec.nx; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", field.spec.cx(i), field.spec.cy(j),
                    field.values(i, j));
      csv += buf;
    }
  write_text_file(path, csv);
}

void save_pgm(const GridField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input_error("cannot write '" + path + "'");
  out << "P5\n" << field.spec.nx << " " << field.spec.ny << "\n255\n";
  const double lo = field.values.minCoeff();
  const double hi = field.values.maxCoeff();
  const double span = (hi > lo) ? hi - lo : 1.0;
  for (int j = field.spec.ny - 1; j >= 0; --j)
    for (int i = 0; i < field.spec.nx; ++i) {
      const double t = (field.values(i, j) - lo) / span;
      out.put(static_cast<char>(static_cast<int>(255 * t + 0.5)));
    }
}

}  // namespace stokesrec
