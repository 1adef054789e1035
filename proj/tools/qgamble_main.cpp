// qgamble: equilibrium computation, gain surfaces, Monte Carlo estimation,
// multi-round protocol sessions, and the numerical verification suite for
// the two-party gambling game.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgamble/endpoint.hpp"
#include "qgamble/equilibrium.hpp"
#include "qgamble/numfmt.hpp"
#include "qgamble/verify.hpp"

namespace {

using namespace qgamble;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;    // verification or I/O failure
constexpr int kExitUsage = 2;      // usage or domain error
constexpr int kExitTransport = 3;  // transport failure

// Numeric flags arrive as strings so that exact fractions ("8/9") are
// accepted alongside decimals.
struct RealFlag {
  std::string text;
  bool given() const { return !text.empty(); }
  double value() const { return parse_real(text); }
};

void add_real_flag(CLI::App* cmd, const std::string& name, RealFlag& flag,
                   const std::string& help, bool required = false) {
  auto* opt = cmd->add_option(name, flag.text, help);
  if (required) opt->required();
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "'");
  return file;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw std::domain_error("--format must be json or csv, got '" + format +
                            "'");
  }
}

int cmd_nash(const RealFlag& gamma, const RealFlag& delta, const RealFlag& r,
             const std::string& format, const std::string& out_path) {
  check_format(format);
  if (gamma.given() == delta.given()) {
    std::cerr << "error: give exactly one of --gamma or --delta\n";
    return kExitUsage;
  }
  const double r_gain = r.value();
  const double g = gamma.given() ? gamma.value() : gamma_for(delta.value(), r_gain);
  const GameConfig config(g, r_gain);
  const NashPoint point = nash_point(config);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (format == "csv") {
    out << "gamma,r,alpha_star,beta_star,delta\n"
        << fmt_double(config.gamma) << ',' << fmt_double(config.r_gain) << ','
        << fmt_double(point.alpha_star) << ',' << fmt_double(point.beta_star)
        << ',' << fmt_double(point.delta) << '\n';
  } else {
    out << nash_point_json(config, point) << '\n';
  }
  return kExitOk;
}

int cmd_surface(const RealFlag& gamma, const RealFlag& r, int grid_n,
                const std::string& format, const std::string& out_path) {
  check_format(format);
  const GameConfig config(gamma.value(), r.value());
  const SurfaceTable table =
      surface(config, uniform_grid(grid_n), uniform_grid(grid_n));
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["gamma"] = config.gamma;
    j["r"] = config.r_gain;
    auto rows = nlohmann::ordered_json::array();
    const std::size_t nb = table.betas.size();
    for (std::size_t i = 0; i < table.alphas.size(); ++i) {
      for (std::size_t k = 0; k < nb; ++k) {
        rows.push_back({{"alpha", table.alphas[i]},
                        {"beta", table.betas[k]},
                        {"gb", table.gb[i * nb + k]}});
      }
    }
    j["rows"] = std::move(rows);
    out << j.dump() << '\n';
  } else {
    write_surface_csv(out, table);
  }
  return kExitOk;
}

int cmd_simulate(const RealFlag& gamma, const RealFlag& r,
                 const RealFlag& alpha, const RealFlag& beta, std::uint64_t n,
                 std::uint64_t seed, const std::string& format,
                 const std::string& out_path) {
  check_format(format);
  const GameConfig config(gamma.value(), r.value());
  const Strategy strategy(alpha.value(), beta.value());
  const McSummary s = monte_carlo(strategy, config, n, seed);
  const double dn = static_cast<double>(s.n);
  const double p1 = static_cast<double>(s.n_found) / dn;
  const double p2 = static_cast<double>(s.n_mismatch) / dn;
  const double p3 = static_cast<double>(s.n_match) / dn;
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (format == "csv") {
    out << "p1_hat,p2_hat,p3_hat,mean_gain,stderr,n,seed\n"
        << fmt_double(p1) << ',' << fmt_double(p2) << ',' << fmt_double(p3)
        << ',' << fmt_double(s.mean) << ',' << fmt_double(s.std_err) << ','
        << s.n << ',' << seed << '\n';
  } else {
    nlohmann::ordered_json j;
    j["p1_hat"] = p1;
    j["p2_hat"] = p2;
    j["p3_hat"] = p3;
    j["mean_gain"] = s.mean;
    j["stderr"] = s.std_err;
    j["n"] = s.n;
    j["seed"] = seed;
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_protocol(const RealFlag& gamma, const RealFlag& r,
                 std::uint64_t rounds, std::uint64_t seed,
                 const std::string& alice_spec, const std::string& bob_spec,
                 const std::string& listen_addr,
                 const std::string& connect_addr, bool abort_on_lie,
                 const std::string& out_path) {
  const GameConfig config(gamma.value(), r.value());
  const AlicePolicy alice = parse_alice_policy(alice_spec);
  const BobPolicy bob = parse_bob_policy(bob_spec);
  SessionRules rules{abort_on_lie};

  Ledger ledger{config, seed, {}, 0.0, 0.0, false, AbortKind::None, ""};
  if (!listen_addr.empty() && !connect_addr.empty()) {
    std::cerr << "error: --listen and --connect are exclusive\n";
    return kExitUsage;
  }
  if (!listen_addr.empty()) {
    // The listener plays Alice (box owner and ledger keeper).
    TcpListener listener(listen_addr);
    auto transport = listener.accept(std::chrono::milliseconds(30000));
    EndpointOptions options;
    options.rules = rules;
    ledger = run_alice_endpoint(*transport, config, alice, bob, rounds, seed,
                                options);
  } else if (!connect_addr.empty()) {
    auto transport =
        tcp_connect(connect_addr, std::chrono::milliseconds(30000));
    EndpointOptions options;
    options.rules = rules;
    ledger =
        run_bob_endpoint(*transport, config, alice, bob, rounds, seed, options);
  } else {
    ledger = run_session(config, alice, bob, rounds, seed, rules);
  }

  std::ofstream file;
  write_ledger_csv(open_out(file, out_path), ledger);
  std::cout << ledger_summary_json(ledger) << '\n';
  if (ledger.abort_kind == AbortKind::Transport ||
      ledger.abort_kind == AbortKind::Protocol) {
    return kExitTransport;
  }
  return kExitOk;
}

int cmd_verify(int configs, int grid_n, std::uint64_t seed) {
  VerifyReport report = run_verification({configs, grid_n, seed});
  std::cout << report.text;
  std::cout << (report.pass ? "verification passed\n" : "verification FAILED\n");
  return report.pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-party quantum gambling: equilibrium, surfaces, protocol"};
  app.require_subcommand(1);

  RealFlag gamma, delta, r, alpha, beta;
  std::uint64_t n = 1000000, seed = 0, rounds = 1000;
  int grid_n = 101, configs = 20;
  std::string out_path, alice_spec = "nash", bob_spec = "nash";
  std::string nash_format = "json", surface_format = "csv",
              simulate_format = "json";
  std::string listen_addr, connect_addr;
  bool abort_on_lie = false;

  auto* nash = app.add_subcommand("nash", "equilibrium point as JSON");
  add_real_flag(nash, "--gamma", gamma, "committed-state weight in (0,1]");
  add_real_flag(nash, "--delta", delta, "target bias; derives gamma");
  add_real_flag(nash, "--r", r, "Bob's one-shot gain", true);
  nash->add_option("--format", nash_format, "json|csv")->default_val("json");
  nash->add_option("--out", out_path, "output path (default stdout)");

  auto* surf = app.add_subcommand("surface", "G_b grid as CSV");
  add_real_flag(surf, "--gamma", gamma, "committed-state weight", true);
  add_real_flag(surf, "--r", r, "Bob's one-shot gain", true);
  surf->add_option("--grid", grid_n, "points per axis (>= 2)")
      ->default_val(101);
  surf->add_option("--format", surface_format, "csv|json")->default_val("csv");
  surf->add_option("--out", out_path, "output path (default stdout)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo outcome sampling");
  add_real_flag(sim, "--gamma", gamma, "committed-state weight", true);
  add_real_flag(sim, "--r", r, "Bob's one-shot gain", true);
  add_real_flag(sim, "--alpha", alpha, "Alice's preparation weight", true);
  add_real_flag(sim, "--beta", beta, "Bob's splitting ratio", true);
  sim->add_option("--n", n, "rounds to sample")->default_val(1000000);
  sim->add_option("--seed", seed, "random seed")->default_val(0);
  sim->add_option("--format", simulate_format, "json|csv")->default_val("json");
  sim->add_option("--out", out_path, "output path (default stdout)");

  auto* proto = app.add_subcommand("protocol", "multi-round session ledger");
  add_real_flag(proto, "--gamma", gamma, "committed-state weight", true);
  add_real_flag(proto, "--r", r, "Bob's one-shot gain", true);
  proto->add_option("--rounds", rounds, "rounds to play")->default_val(1000);
  proto->add_option("--seed", seed, "master seed")->default_val(0);
  proto->add_option("--alice", alice_spec,
                    "nash | fixed:A | spotcheck:q=Q,alpha=A,penalty=P")
      ->default_val("nash");
  proto->add_option("--bob", bob_spec, "nash | fixed:B | liar:B")
      ->default_val("nash");
  proto->add_option("--listen", listen_addr, "host:port; play Alice over TCP");
  proto->add_option("--connect", connect_addr, "host:port; play Bob over TCP");
  proto->add_flag("--abort-on-lie", abort_on_lie,
                  "end the session when a lie is caught");
  proto->add_option("--out", out_path, "ledger CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "numerical invariant suites");
  verify->add_option("--configs", configs, "random configs (>= 1)")
      ->default_val(20);
  verify->add_option("--grid", grid_n, "saddle grid resolution")
      ->default_val(101);
  verify->add_option("--seed", seed, "generator seed")->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (nash->parsed()) {
      return cmd_nash(gamma, delta, r, nash_format, out_path);
    }
    if (surf->parsed()) {
      return cmd_surface(gamma, r, grid_n, surface_format, out_path);
    }
    if (sim->parsed()) {
      return cmd_simulate(gamma, r, alpha, beta, n, seed, simulate_format,
                          out_path);
    }
    if (proto->parsed()) {
      return cmd_protocol(gamma, r, rounds, seed, alice_spec, bob_spec,
                          listen_addr, connect_addr, abort_on_lie, out_path);
    }
    if (verify->parsed()) return cmd_verify(configs, grid_n, seed);
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << '\n';
    return kExitTransport;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
