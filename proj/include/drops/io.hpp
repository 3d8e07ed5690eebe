// Serialization of the library's value types: JSON for operators,
// coefficient maps, fit reports, pulse sequences and rotation estimates;
// CSV for sample sets and sweeps; ASCII PLY for droplet meshes. All numeric
// text is written with 17 significant digits so files round-trip exactly.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "drops/angles.hpp"
#include "drops/diagnostics.hpp"
#include "drops/fit.hpp"
#include "drops/map.hpp"
#include "drops/mesh.hpp"
#include "drops/operators.hpp"
#include "drops/pulses.hpp"
#include "drops/samples.hpp"
#include "drops/tensors.hpp"

namespace drops {

namespace detail {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline double json_number(const nlohmann::json& j, const char* context) {
  if (!j.is_number()) throw std::invalid_argument(std::string(context) + ": expected a number");
  return j.get<double>();
}

// angles in JSON may be plain numbers or symbolic multiples of pi ("pi/2")
inline double json_angle(const nlohmann::json& j, const char* context) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw std::invalid_argument(std::string(context) + ": expected a number or an angle string");
}

// pulse phases additionally accept the conventional axis names
inline double json_phase(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "x") return 0.0;
    if (s == "y") return kPi / 2.0;
    if (s == "-x") return kPi;
    if (s == "-y") return 3.0 * kPi / 2.0;
  }
  return json_angle(j, "pulse phase");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const size_t first = field.find_first_not_of(" \t\r");
    const size_t last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  return fields;
}

inline double parse_csv_double(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty())
    throw std::invalid_argument("malformed numeric field '" + text + "'");
  return value;
}

}  // namespace detail

// ---- files ----

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file " + path);
  out << content;
}

// ---- operators ----

inline nlohmann::json operator_to_json(const Operator& op) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
      row.push_back({op.matrix(r, c).real(), op.matrix(r, c).imag()});
    rows.push_back(row);
  }
  return {{"n_spins", op.n_spins}, {"matrix", rows}};
}

inline Operator operator_from_json(const nlohmann::json& j) {
  if (!j.contains("n_spins") || !j.contains("matrix"))
    throw std::invalid_argument("operator JSON needs n_spins and matrix");
  const int n = j.at("n_spins").get<int>();
  const auto& rows = j.at("matrix");
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (n < 1 || !rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
    throw std::invalid_argument("operator JSON matrix does not match n_spins");
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw std::invalid_argument("operator JSON matrix is not square");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("operator JSON entries must be [re, im] pairs");
      m(r, c) = Complex(detail::json_number(e.at(0), "operator entry"),
                        detail::json_number(e.at(1), "operator entry"));
    }
  }
  return make_operator(n, m);
}

// ---- droplet coefficients ----

inline nlohmann::json coefficients_to_json(const DropletCoefficients& coeffs) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [idx, c] : coeffs.entries)
    entries.push_back({{"label", idx.label.name()},
                       {"j", idx.j},
                       {"m", idx.m},
                       {"re", c.real()},
                       {"im", c.imag()}});
  return {{"n_spins", coeffs.n_spins}, {"entries", entries}};
}

inline DropletCoefficients coefficients_from_json(const nlohmann::json& j) {
  if (!j.contains("n_spins") || !j.contains("entries"))
    throw std::invalid_argument("coefficient JSON needs n_spins and entries");
  DropletCoefficients out{j.at("n_spins").get<int>(), {}};
  for (const auto& e : j.at("entries")) {
    const TensorIndex idx{DropletLabel::from_name(e.at("label").get<std::string>()),
                          e.at("j").get<int>(), e.at("m").get<int>()};
    out.entries[idx] = Complex(detail::json_number(e.at("re"), "coefficient"),
                               detail::json_number(e.at("im"), "coefficient"));
  }
  return out;
}

// ---- fit reports ----

inline nlohmann::json fit_report_to_json(const FitReport& report) {
  return {{"coefficients", coefficients_to_json(report.coefficients)},
          {"residual_rms", report.residual_rms},
          {"condition_number", report.condition_number}};
}

// ---- rotation estimates ----

inline nlohmann::json estimate_to_json(const RotationEstimate& est) {
  return {{"psi", est.psi},
          {"axis", {est.axis[0], est.axis[1], est.axis[2]}},
          {"global_phase", est.global_phase},
          {"axis_determinate", est.axis_determinate}};
}

// ---- sample sets ----

inline std::string samples_to_csv(const SampleSet& samples) {
  std::string out = "label,j,beta,alpha,re,im\n";
  for (const SampleEntry& entry : samples.entries)
    for (const Sample& s : entry.samples)
      out += entry.label.name() + "," + std::to_string(entry.j) + "," + detail::fmt17(s.beta) +
             "," + detail::fmt17(s.alpha) + "," + detail::fmt17(s.value.real()) + "," +
             detail::fmt17(s.value.imag()) + "\n";
  return out;
}

inline SampleSet samples_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw std::invalid_argument("sample CSV is empty");
  {
    const std::vector<std::string> expected{"label", "j", "beta", "alpha", "re", "im"};
    if (detail::split_csv_line(line) != expected)
      throw std::invalid_argument("sample CSV header must be label,j,beta,alpha,re,im");
  }
  SampleSet out{1, {}};
  std::map<std::pair<std::string, int>, size_t> slots;
  while (std::getline(ss, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 6) throw std::invalid_argument("sample CSV row needs 6 fields");
    const DropletLabel label = DropletLabel::from_name(fields[0]);
    const int j = static_cast<int>(detail::parse_csv_double(fields[1]));
    if (!rank_in_label(label, j))
      throw std::invalid_argument("sample CSV rank " + fields[1] + " invalid for label " +
                                  fields[0]);
    const auto key = std::make_pair(fields[0], j);
    if (!slots.count(key)) {
      slots[key] = out.entries.size();
      out.entries.push_back({label, j, {}});
    }
    out.entries[slots[key]].samples.push_back({detail::parse_csv_double(fields[2]),
                                               detail::parse_csv_double(fields[3]),
                                               Complex(detail::parse_csv_double(fields[4]),
                                                       detail::parse_csv_double(fields[5]))});
    const int spins_needed = label.kind == DropletLabel::Kind::Bilinear ? std::max(label.k, label.l)
                             : label.kind == DropletLabel::Kind::Linear ? label.k
                                                                        : 1;
    out.n_spins = std::max(out.n_spins, spins_needed);
  }
  return out;
}

inline nlohmann::json samples_to_json(const SampleSet& samples) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SampleEntry& entry : samples.entries) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Sample& s : entry.samples)
      rows.push_back(
          {{"beta", s.beta}, {"alpha", s.alpha}, {"re", s.value.real()}, {"im", s.value.imag()}});
    entries.push_back({{"label", entry.label.name()}, {"j", entry.j}, {"samples", rows}});
  }
  return {{"n_spins", samples.n_spins}, {"entries", entries}};
}

// ---- sweeps ----

inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::string out = "angle,f0_re,f0_im,sign\n";
  for (const SweepRecord& r : records)
    out += detail::fmt17(r.angle) + "," + detail::fmt17(r.f0.real()) + "," +
           detail::fmt17(r.f0.imag()) + "," + std::to_string(r.droplet_sign) + "\n";
  return out;
}

// ---- pulse sequences ----

inline nlohmann::json sequence_to_json(const PulseSequence& seq) {
  nlohmann::json events = nlohmann::json::array();
  for (const PulseEvent& event : seq.events) {
    if (const Pulse* p = std::get_if<Pulse>(&event)) {
      events.push_back({{"type", "pulse"},
                        {"spins", std::vector<int>(p->spins.begin(), p->spins.end())},
                        {"flip", p->flip},
                        {"phase", p->phase}});
    } else if (const Delay* d = std::get_if<Delay>(&event)) {
      events.push_back({{"type", "delay"}, {"duration", d->duration}});
    } else {
      const Gradient& g = std::get<Gradient>(event);
      events.push_back(
          {{"type", "gradient"}, {"spins", std::vector<int>(g.spins.begin(), g.spins.end())}});
    }
  }
  return {{"j_coupling_hz", seq.j_coupling_hz}, {"events", events}};
}

inline PulseSequence sequence_from_json(const nlohmann::json& j) {
  PulseSequence seq;
  if (j.contains("j_coupling_hz"))
    seq.j_coupling_hz = detail::json_number(j.at("j_coupling_hz"), "j_coupling_hz");
  if (!j.contains("events") || !j.at("events").is_array())
    throw std::invalid_argument("sequence JSON needs an events array");
  for (const auto& e : j.at("events")) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "pulse") {
      Pulse p;
      for (int s : e.at("spins").get<std::vector<int>>()) p.spins.insert(s);
      p.flip = detail::json_angle(e.at("flip"), "pulse flip");
      p.phase = detail::json_phase(e.at("phase"));
      seq.events.push_back(p);
    } else if (type == "delay") {
      seq.events.push_back(Delay{detail::json_number(e.at("duration"), "delay duration")});
    } else if (type == "gradient") {
      Gradient g;
      for (int s : e.at("spins").get<std::vector<int>>()) g.spins.insert(s);
      seq.events.push_back(g);
    } else {
      throw std::invalid_argument("unknown sequence event type '" + type + "'");
    }
  }
  return seq;
}

// ---- meshes ----

inline std::string mesh_to_ply(const DropletMesh& m) {
  std::string out;
  out += "ply\n";
  out += "format ascii 1.0\n";
  out += "comment droplet surface, phase encoded in vertex color\n";
  out += "element vertex " + std::to_string(m.vertices.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "element face " + std::to_string(m.faces.size()) + "\n";
  out += "property list uchar int vertex_indices\n";
  out += "end_header\n";
  for (const MeshVertex& v : m.vertices)
    out += detail::fmt17(v.position[0]) + " " + detail::fmt17(v.position[1]) + " " +
           detail::fmt17(v.position[2]) + " " + std::to_string(v.color[0]) + " " +
           std::to_string(v.color[1]) + " " + std::to_string(v.color[2]) + "\n";
  for (const auto& f : m.faces)
    out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) +
           "\n";
  return out;
}

inline nlohmann::json mesh_to_json(const DropletMesh& m) {
  nlohmann::json vertices = nlohmann::json::array();
  nlohmann::json phases = nlohmann::json::array();
  for (const MeshVertex& v : m.vertices) {
    vertices.push_back({v.position[0], v.position[1], v.position[2]});
    phases.push_back(v.phase);
  }
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : m.faces) faces.push_back({f[0], f[1], f[2]});
  return {{"vertices", vertices}, {"faces", faces}, {"phases", phases}};
}

}  // namespace drops
