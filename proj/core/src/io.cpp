#include "ncmax/io.hpp"

#include <fstream>
#include <sstream>

namespace ncmax {

json matrix_to_json(const GeneralOperator& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

GeneralOperator matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto d = static_cast<Eigen::Index>(j.size());
  GeneralOperator m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      throw std::invalid_argument("matrix: rows must form a square matrix");
    for (Eigen::Index c = 0; c < d; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix: entries must be [re, im]");
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json sequence_to_json(const OperatorSequence& seq) {
  json items = json::array();
  for (const auto& it : seq.items) items.push_back(matrix_to_json(it.mat()));
  return json{{"dim", seq.dim()},
              {"positive", seq.positive_flag},
              {"items", std::move(items)}};
}

OperatorSequence sequence_from_json(const json& j) {
  bool positive = j.at("positive").get<bool>();
  auto dim = j.at("dim").get<Eigen::Index>();
  std::vector<HermitianOperator> items;
  for (const json& it : j.at("items")) {
    GeneralOperator m = matrix_from_json(it);
    if (m.rows() != dim)
      throw std::invalid_argument("sequence: item dimension disagrees with header");
    items.emplace_back(m);  // validates Hermitian-ness
  }
  return OperatorSequence::make(std::move(items), positive);
}

json grid_to_json(const GridFunction& f) {
  json points = json::array();
  for (const auto& v : f.values) points.push_back(matrix_to_json(v));
  return json{{"dim", f.dim()},
              {"grid_size", f.grid_size()},
              {"points", std::move(points)}};
}

GridFunction grid_from_json(const json& j) {
  auto dim = j.at("dim").get<Eigen::Index>();
  auto size = j.at("grid_size").get<std::size_t>();
  const json& pts = j.at("points");
  if (pts.size() != size)
    throw std::invalid_argument("grid: point count disagrees with grid_size");
  std::vector<GeneralOperator> vals;
  vals.reserve(size);
  for (const json& it : pts) {
    GeneralOperator m = matrix_from_json(it);
    if (m.rows() != dim)
      throw std::invalid_argument("grid: point dimension disagrees with header");
    vals.push_back(std::move(m));
  }
  return GridFunction::make(std::move(vals));
}

json solver_config_to_json(const SolverConfig& c) {
  const char* method = "auto";
  switch (c.method) {
    case SolveMethod::closed_form_inf: method = "closed_form_inf"; break;
    case SolveMethod::dykstra_p2: method = "dykstra_p2"; break;
    case SolveMethod::projected_gradient: method = "projected_gradient"; break;
    case SolveMethod::barrier: method = "barrier"; break;
    case SolveMethod::auto_select: method = "auto"; break;
  }
  return json{{"tol", c.tol},
              {"max_iter", c.max_iter},
              {"step_rule", c.backtracking ? "backtracking" : "fixed"},
              {"epsilon_reg", c.epsilon_reg},
              {"method", method}};
}

SolverConfig solver_config_from_json(const json& j) {
  SolverConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "tol") c.tol = value.get<double>();
    else if (key == "max_iter") c.max_iter = value.get<int>();
    else if (key == "step_rule") c.backtracking = value.get<std::string>() == "backtracking";
    else if (key == "epsilon_reg") c.epsilon_reg = value.get<double>();
    else if (key == "method") {
      std::string m = value.get<std::string>();
      if (m == "closed_form_inf") c.method = SolveMethod::closed_form_inf;
      else if (m == "dykstra_p2") c.method = SolveMethod::dykstra_p2;
      else if (m == "projected_gradient") c.method = SolveMethod::projected_gradient;
      else if (m == "barrier") c.method = SolveMethod::barrier;
      else if (m == "auto") c.method = SolveMethod::auto_select;
      else throw std::invalid_argument("solver config: unknown method " + m);
    } else {
      throw std::invalid_argument("solver config: unknown key " + key);
    }
  }
  return c;
}

json report_to_json(const VerificationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back(json{{"trial", v.trial},
                              {"ratio", v.ratio},
                              {"digest", v.digest},
                              {"what", v.what}});
  json p_list = json::array();
  for (double p : rep.config.p_list)
    p_list.push_back(is_inf_exponent(p) ? json("inf") : json(p));
  json config{{"seed", rep.config.seed},
              {"trials", rep.config.trials},
              {"dim", rep.config.dim},
              {"seq_len", rep.config.seq_len},
              {"grid_size", rep.config.grid_size},
              {"levels", rep.config.levels},
              {"p_list", std::move(p_list)},
              {"tolerance", rep.config.tolerance},
              {"solver", solver_config_to_json(rep.config.solver)}};
  return json{{"suite", rep.suite},
              {"config", std::move(config)},
              {"ratios", rep.ratios},
              {"max_ratio", rep.max_ratio},
              {"bound", rep.bound},
              {"violations", std::move(violations)},
              {"skipped", rep.skipped},
              {"pass", rep.pass},
              {"wall_time", rep.wall_time}};
}

std::string reports_to_csv(const std::vector<VerificationReport>& reps) {
  std::ostringstream out;
  out << "suite,trial,ratio,bound,pass\n";
  out.precision(17);
  for (const auto& rep : reps)
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
      out << rep.suite << ',' << i << ',' << rep.ratios[i] << ',' << rep.bound
          << ',' << (rep.pass ? 1 : 0) << '\n';
  return out.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);  // parse errors carry byte positions
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return kPInf;
  std::size_t pos = 0;
  double p = std::stod(text, &pos);
  if (pos != text.size() || !(p >= 1.0))
    throw std::invalid_argument("exponent must be 'inf' or a number >= 1");
  return p;
}

}  // namespace ncmax
