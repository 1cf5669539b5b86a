#pragma once

// Command-line front end: every library operation behind a subcommand,
// JSON in / JSON out, deterministic for a fixed seed. Exit codes:
// 0 success, 2 input or parse error, 3 precondition or cap error.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conecd/json_io.hpp"

namespace conecd::cli {

inline std::string resolve_arg(const std::string& raw) {
  if (raw.empty() || raw[0] != '@') return raw;
  std::ifstream in(raw.substr(1));
  if (!in)
    throw ParseFailure("cannot read input file '" + raw.substr(1) + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json parse_json_text(const std::string& raw, const char* what) {
  try {
    return Json::parse(resolve_arg(raw));
  } catch (const ParseFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseFailure(std::string(what) + ": invalid JSON: " + e.what());
  }
}

inline RealVec parse_vec_arg(const std::string& raw, const char* what) {
  return parse_realvec(parse_json_text(raw, what), what);
}

inline SparseSeq parse_seq_arg(const std::string& raw, const char* what) {
  return parse_sparseseq(parse_json_text(raw, what), what);
}

inline std::vector<double> parse_csv_doubles(const std::string& raw,
                                             const char* what) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseFailure(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ParseFailure(std::string(what) + ": empty list");
  return out;
}

inline IndexSet parse_csv_indices(const std::string& raw, const char* what) {
  IndexSet out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      out.insert(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ParseFailure(std::string(what) + ": bad index '" + item + "'");
    }
  }
  if (out.empty()) throw ParseFailure(std::string(what) + ": empty list");
  return out;
}

inline int emit_error(std::ostream& out, const char* code,
                      const std::string& detail, int exit_code) {
  out << Json{{"error", code}, {"detail", detail}}.dump() << "\n";
  return exit_code;
}

inline bool ci_mode() {
  const char* v = std::getenv("CONE_CODERIV_CI");
  return v != nullptr && std::string(v) == "1";
}

inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Coderivatives of the projection onto the positive cone"};
  app.require_subcommand(1);

  std::string x_arg, y_arg, z_arg, w_arg, radii_arg = "0.1,0.01,0.001",
                                          m_arg;
  double tol = 0.0, zero_tol = 0.0;
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  bool limiting = false;

  auto* project = app.add_subcommand("project", "project a point onto K");
  project->add_option("--x", x_arg)->required();

  auto* part = app.add_subcommand("partition", "sign partition of a point");
  part->add_option("--x", x_arg)->required();
  part->add_option("--zero-tol", zero_tol);

  auto* reg = app.add_subcommand("regime", "differentiability regime");
  reg->add_option("--x", x_arg)->required();
  reg->add_option("--zero-tol", zero_tol);

  auto* dderiv =
      app.add_subcommand("dderiv", "directional derivative of the projection");
  dderiv->add_option("--x", x_arg)->required();
  dderiv->add_option("--w", w_arg)->required();

  auto* dstar = app.add_subcommand("dstar", "coderivative as a box product");
  dstar->add_option("--x", x_arg)->required();
  dstar->add_option("--y", y_arg)->required();
  dstar->add_flag("--limiting", limiting);

  auto* member = app.add_subcommand("member", "membership in the coderivative");
  member->add_option("--x", x_arg)->required();
  member->add_option("--y", y_arg)->required();
  member->add_option("--z", z_arg)->required();
  member->add_option("--tol", tol);

  auto* extremes =
      app.add_subcommand("extremes", "vertices of the coderivative set");
  extremes->add_option("--x", x_arg)->required();
  extremes->add_option("--y", y_arg)->required();

  auto* supq = app.add_subcommand(
      "supq", "exact sup of the definitional quotient over directions");
  supq->add_option("--x", x_arg)->required();
  supq->add_option("--y", y_arg)->required();
  supq->add_option("--z", z_arg)->required();
  supq->add_option("--seed", seed);

  auto* witness =
      app.add_subcommand("witness", "violating direction for a non-member");
  witness->add_option("--x", x_arg)->required();
  witness->add_option("--y", y_arg)->required();
  witness->add_option("--z", z_arg)->required();

  auto* probe = app.add_subcommand(
      "probe", "limit candidates sampled from shrinking neighborhoods");
  probe->add_option("--x", x_arg)->required();
  probe->add_option("--y", y_arg)->required();
  probe->add_option("--radii", radii_arg);
  probe->add_option("--samples", samples);
  probe->add_option("--seed", seed);

  auto* l2dstar =
      app.add_subcommand("l2-dstar", "sequence-space coderivative");
  l2dstar->add_option("--x", x_arg)->required();
  l2dstar->add_option("--y", y_arg)->required();
  l2dstar->add_flag("--limiting", limiting);

  auto* l2check = app.add_subcommand(
      "l2-check", "closed-form checks for strictly supported points");
  l2check->add_option("--x", x_arg)->required();
  l2check->add_option("--y", y_arg)->required();
  l2check->add_option("--m", m_arg)->required();

  std::vector<const char*> argv;
  argv.push_back("cone-coderiv");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return emit_error(out, "usage", e.what(), 2);
  }

  try {
    if ((probe->parsed() || supq->parsed()) && ci_mode() && !seed)
      return emit_error(out, "usage", "--seed is required in CI mode", 2);

    if (project->parsed()) {
      out << Json{{"result", to_json(conecd::project(
                                 parse_vec_arg(x_arg, "--x")))}}.dump()
          << "\n";
    } else if (part->parsed()) {
      out << to_json(partition(parse_vec_arg(x_arg, "--x"), zero_tol)).dump()
          << "\n";
    } else if (reg->parsed()) {
      out << Json{{"regime",
                   regime_name(regime(parse_vec_arg(x_arg, "--x"), zero_tol))}}
                 .dump()
          << "\n";
    } else if (dderiv->parsed()) {
      out << Json{{"result",
                   to_json(directional_derivative(parse_vec_arg(x_arg, "--x"),
                                                  parse_vec_arg(w_arg, "--w")))}}
                 .dump()
          << "\n";
    } else if (dstar->parsed()) {
      const RealVec x = parse_vec_arg(x_arg, "--x");
      const RealVec y = parse_vec_arg(y_arg, "--y");
      const BoxProduct s = limiting ? mordukhovich_coderivative(x, y)
                                    : regular_coderivative(x, y);
      out << to_json(s).dump() << "\n";
    } else if (member->parsed()) {
      const BoxProduct s = regular_coderivative(parse_vec_arg(x_arg, "--x"),
                                                parse_vec_arg(y_arg, "--y"));
      out << Json{{"member", s.contains(parse_vec_arg(z_arg, "--z"), tol)}}
                 .dump()
          << "\n";
    } else if (extremes->parsed()) {
      const BoxProduct s = regular_coderivative(parse_vec_arg(x_arg, "--x"),
                                                parse_vec_arg(y_arg, "--y"));
      Json pts = Json::array();
      for (const auto& v : extreme_points(s)) pts.push_back(to_json(v));
      out << Json{{"points", pts}}.dump() << "\n";
    } else if (supq->parsed()) {
      out << to_json(exact_sup_quotient(parse_vec_arg(x_arg, "--x"),
                                        parse_vec_arg(y_arg, "--y"),
                                        parse_vec_arg(z_arg, "--z")))
                 .dump()
          << "\n";
    } else if (witness->parsed()) {
      const auto d = witness_direction(parse_vec_arg(x_arg, "--x"),
                                       parse_vec_arg(y_arg, "--y"),
                                       parse_vec_arg(z_arg, "--z"));
      out << Json{{"direction", d ? to_json(*d) : Json(nullptr)}}.dump()
          << "\n";
    } else if (probe->parsed()) {
      const auto cands = limiting_probe(
          parse_vec_arg(x_arg, "--x"), parse_vec_arg(y_arg, "--y"), samples,
          parse_csv_doubles(radii_arg, "--radii"), seed.value_or(0));
      Json arr = Json::array();
      for (const auto& c : cands) arr.push_back(to_json(c));
      out << Json{{"candidates", arr}}.dump() << "\n";
    } else if (l2dstar->parsed()) {
      out << to_json(seq_regular_coderivative(parse_seq_arg(x_arg, "--x"),
                                              parse_seq_arg(y_arg, "--y")))
                 .dump()
          << "\n";
    } else if (l2check->parsed()) {
      out << to_json(strict_support_check(parse_seq_arg(x_arg, "--x"),
                                          parse_seq_arg(y_arg, "--y"),
                                          parse_csv_indices(m_arg, "--m")))
                 .dump()
          << "\n";
    }
    return 0;
  } catch (const ParseFailure& e) {
    return emit_error(out, "parse", e.what(), 2);
  } catch (const DimensionMismatch& e) {
    return emit_error(out, "dimension", e.what(), 2);
  } catch (const PreconditionViolated& e) {
    return emit_error(out, "precondition", e.what(), 3);
  } catch (const DegenerateInput& e) {
    return emit_error(out, "precondition", e.what(), 3);
  } catch (const TooManyBullets& e) {
    return emit_error(out, "cap", e.what(), 3);
  } catch (const TooManyBoxes& e) {
    return emit_error(out, "cap", e.what(), 3);
  } catch (const EmptySetError& e) {
    return emit_error(out, "empty", e.what(), 3);
  }
}

}  // namespace conecd::cli
