// Batch front end for the droplet-representation library: decompose and
// synthesize operators, run simulated tomography scans, sweep spinor
// demonstrations, study deliberate rotation errors, and list the built-in
// gate table. Outputs are plain CSV/JSON/PLY files; identical flags and seed
// give byte-identical results.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drops/drops.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// --config FILE expands to flag tokens inserted in place, so explicit flags
// given later on the command line override the file (every option takes the
// last value). Keys mirror the long flag names without the leading dashes.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") {
      out.push_back(args[i]);
      continue;
    }
    if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
    const json cfg = json::parse(drops::read_text_file(args[++i]));
    if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      out.push_back("--" + key);
      if (value.is_boolean()) {
        out.push_back(value.get<bool>() ? "true" : "false");
      } else if (value.is_string()) {
        out.push_back(value.get<std::string>());
      } else if (value.is_number()) {
        out.push_back(fmt17(value.get<double>()));
      } else if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ",";
          joined += item.is_string() ? item.get<std::string>() : fmt17(item.get<double>());
        }
        out.push_back(joined);
      } else {
        throw std::invalid_argument("config key '" + key + "' has an unsupported value type");
      }
    }
  }
  return out;
}

drops::SamplingGrid parse_grid(const std::string& spec) {
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"((\d+)x(\d+))")))
    return drops::equiangular_grid(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(spec, m, std::regex(R"((?:gl|gauss):?(\d+))")))
    return drops::gauss_legendre_grid(std::stoi(m[1]));
  throw std::invalid_argument("grid spec '" + spec +
                              "' not recognized (use e.g. 13x25 or gl:2)");
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(drops::parse_angle(item));
  return out;
}

std::array<double, 3> parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3)
    throw std::invalid_argument("axis must be three comma-separated components");
  std::array<double, 3> axis{};
  for (int i = 0; i < 3; ++i) {
    char* end = nullptr;
    axis[i] = std::strtod(parts[i].c_str(), &end);
    if (end != parts[i].c_str() + parts[i].size() || parts[i].empty())
      throw std::invalid_argument("axis component '" + parts[i] + "' is not a number");
  }
  return axis;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    drops::write_text_file(out_path, content);
}

// reads the operator input of decompose: a named gate or an operator JSON file
drops::Operator resolve_operator(const std::string& gate, const std::string& file) {
  if (gate.empty() == file.empty())
    throw std::invalid_argument("provide exactly one of --gate or --operator");
  if (!gate.empty()) return drops::gate_by_name(gate).matrix;
  return drops::operator_from_json(json::parse(drops::read_text_file(file)));
}

int run(std::vector<std::string> args) {
  CLI::App app{"droplet representation toolbox: tomography simulation, "
               "operator decomposition, and display meshes"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand("decompose", "map an operator to droplet coefficients");
  std::string dec_gate, dec_file, dec_out;
  dec->add_option("--gate", dec_gate, "gate name from the built-in table")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  dec->add_option("--operator", dec_file, "operator JSON file")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  dec->add_option("--out", dec_out, "output path (default stdout)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // synthesize
  auto* syn = app.add_subcommand("synthesize", "map droplet coefficients back to an operator");
  std::string syn_file, syn_out;
  syn->add_option("--coefficients", syn_file, "coefficient JSON file")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  syn->add_option("--out", syn_out, "output path (default stdout)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // tomo
  auto* tomo = app.add_subcommand("tomo", "simulate a tomography scan and fit the droplets");
  std::string tomo_gate, tomo_sequence, tomo_grid = "13x25", tomo_mode = "ideal";
  std::string tomo_rho0 = "exact", tomo_out = "tomo";
  int tomo_system_spins = 1, tomo_mesh_resolution = 32;
  double tomo_noise = 0.0;
  std::uint64_t tomo_seed = 0;
  bool tomo_mesh = false;
  tomo->add_option("--gate", tomo_gate, "gate name from the built-in table")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--sequence", tomo_sequence, "pulse sequence JSON realizing the controlled gate")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--system-spins", tomo_system_spins, "system size for sequence targets")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--grid", tomo_grid, "grid spec: NxM equiangular or gl:J (default 13x25)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--mode", tomo_mode, "measurement pipeline: ideal or nmr")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--noise", tomo_noise, "Gaussian noise level per expectation value")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--seed", tomo_seed, "noise seed")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--rho0", tomo_rho0, "initial state preparation: exact or sequence")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_flag("--mesh", tomo_mesh, "additionally write one PLY surface per label");
  tomo->add_option("--mesh-resolution", tomo_mesh_resolution, "mesh lattice rows (default 32)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tomo->add_option("--out", tomo_out, "output prefix (default 'tomo')")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // spinor
  auto* spinor = app.add_subcommand("spinor", "sweep rotation or phase-shift droplets");
  std::string spinor_kind = "rotation", spinor_angles, spinor_out;
  spinor->add_option("--kind", spinor_kind, "rotation or phase")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  spinor->add_option("--angles", spinor_angles, "comma-separated angles, symbolic pi allowed")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  spinor->add_option("--out", spinor_out, "output path (default stdout)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // errors
  auto* errors = app.add_subcommand("errors", "study flip-angle and axis-tilt rotation errors");
  std::string errors_psi = "pi", errors_axis = "1,0,0", errors_tilt = "0", errors_out;
  double errors_flip = 1.0;
  int errors_resolution = 32;
  errors->add_option("--psi", errors_psi, "nominal rotation angle (symbolic pi allowed)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  errors->add_option("--axis", errors_axis, "nominal rotation axis, three components")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  errors->add_option("--flip", errors_flip, "flip-angle scale factor (1 = ideal)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  errors->add_option("--tilt", errors_tilt, "axis tilt about z (symbolic pi allowed)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  errors->add_option("--mesh-resolution", errors_resolution, "mesh lattice rows (default 32)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  errors->add_option("--out", errors_out, "output prefix for meshes and the estimate JSON")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // list-gates
  auto* list = app.add_subcommand("list-gates", "enumerate the built-in gate table");
  std::string list_export;
  list->add_option("--export-dir", list_export, "write each gate's pulse sequence JSON here")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (dec->parsed()) {
    const drops::Operator op = resolve_operator(dec_gate, dec_file);
    emit(drops::coefficients_to_json(drops::decompose(op)).dump(2) + "\n", dec_out);
    return 0;
  }

  if (syn->parsed()) {
    const drops::DropletCoefficients coeffs =
        drops::coefficients_from_json(json::parse(drops::read_text_file(syn_file)));
    emit(drops::operator_to_json(drops::synthesize(coeffs)).dump(2) + "\n", syn_out);
    return 0;
  }

  if (tomo->parsed()) {
    drops::TomoConfig config;
    if (tomo_gate.empty() == tomo_sequence.empty())
      throw std::invalid_argument("provide exactly one of --gate or --sequence");
    if (!tomo_gate.empty()) {
      config.gate = drops::gate_by_name(tomo_gate).matrix;
    } else {
      config.sequence =
          drops::sequence_from_json(json::parse(drops::read_text_file(tomo_sequence)));
      config.n_system_spins = tomo_system_spins;
    }
    config.grid = parse_grid(tomo_grid);
    if (tomo_mode == "ideal") config.mode = drops::TomoMode::Ideal;
    else if (tomo_mode == "nmr") config.mode = drops::TomoMode::Nmr;
    else throw std::invalid_argument("mode must be ideal or nmr");
    if (tomo_rho0 == "exact") config.rho0_via = drops::Rho0Via::Exact;
    else if (tomo_rho0 == "sequence") config.rho0_via = drops::Rho0Via::SequenceP;
    else throw std::invalid_argument("rho0 must be exact or sequence");
    config.noise_sigma = tomo_noise;
    config.seed = tomo_seed;

    const drops::SampleSet samples = drops::run_tomography(config);
    const drops::FitReport report = drops::fit_coefficients(samples, config.grid);
    drops::write_text_file(tomo_out + "_samples.csv", drops::samples_to_csv(samples));
    drops::write_text_file(tomo_out + "_fit.json",
                           drops::fit_report_to_json(report).dump(2) + "\n");
    if (tomo_mesh)
      for (const auto& [label, ranks] : drops::droplet_basis(samples.n_spins)) {
        (void)ranks;
        const drops::DropletMesh m =
            drops::mesh(report.coefficients, label, tomo_mesh_resolution);
        drops::write_text_file(tomo_out + "_mesh_" + label.name() + ".ply",
                               drops::mesh_to_ply(m));
      }
    return 0;
  }

  if (spinor->parsed()) {
    drops::SweepKind kind;
    if (spinor_kind == "rotation") kind = drops::SweepKind::Rotation;
    else if (spinor_kind == "phase") kind = drops::SweepKind::PhaseShift;
    else throw std::invalid_argument("kind must be rotation or phase");
    const std::vector<double> angles = parse_angle_list(spinor_angles);
    const std::vector<drops::SweepRecord> records =
        angles.empty() ? std::vector<drops::SweepRecord>{} : drops::spinor_sweep(kind, angles);
    emit(drops::sweep_to_csv(records), spinor_out);
    return 0;
  }

  if (errors->parsed()) {
    const double psi = drops::parse_angle(errors_psi);
    const double tilt = drops::parse_angle(errors_tilt);
    const std::array<double, 3> axis = parse_axis(errors_axis);
    const drops::DropletCoefficients coeffs =
        drops::perturbed_rotation(psi, axis, errors_flip, tilt);
    const drops::RotationEstimate est = drops::estimate_rotation_params(coeffs);

    json doc = drops::estimate_to_json(est);
    const drops::Complex f0 = drops::evaluate(coeffs, drops::DropletLabel::empty(), 0.0, 0.0);
    doc["f0"] = {{"re", f0.real()}, {"im", f0.imag()}};
    std::cout << doc.dump(2) << "\n";

    if (!errors_out.empty()) {
      drops::write_text_file(errors_out + "_estimate.json", doc.dump(2) + "\n");
      for (const auto& [label, ranks] : drops::droplet_basis(1)) {
        (void)ranks;
        const drops::DropletMesh m = drops::mesh(coeffs, label, errors_resolution);
        drops::write_text_file(errors_out + "_mesh_" + label.name() + ".ply",
                               drops::mesh_to_ply(m));
      }
    }
    return 0;
  }

  // list-gates
  for (const std::string& name : drops::gate_names()) {
    const drops::GateDefinition gate = drops::gate_by_name(name);
    std::cout << name << "  -  " << gate.description << "\n";
    if (!list_export.empty())
      drops::write_text_file(list_export + "/" + std::regex_replace(name, std::regex("[:/]"), "_") +
                                 ".json",
                             drops::sequence_to_json(gate.sequence).dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(expand_config(args));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
