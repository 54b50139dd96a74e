#include "wellsim/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <iostream>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wellsim/dynamics.hpp"
#include "wellsim/errors.hpp"
#include "wellsim/experiments.hpp"
#include "wellsim/meanfield.hpp"
#include "wellsim/result.hpp"

namespace wellsim::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_strict_double(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse '" + context + "' as a time");
  }
  if (pos != s.size()) throw std::invalid_argument("cannot parse '" + context + "' as a time");
  return v;
}

// denominator forms: "4", "1.5", "sqrt2", "2sqrt2"
double parse_denominator(std::string s, const std::string& context) {
  double factor = 1.0;
  if (auto sq = s.find("sqrt2"); sq != std::string::npos) {
    if (sq + 5 != s.size())
      throw std::invalid_argument("cannot parse '" + context + "' as a time");
    factor = std::numbers::sqrt2;
    s = s.substr(0, sq);
    if (!s.empty() && s.back() == '*') s.pop_back();
    if (s.empty()) return factor;
  }
  double value = parse_strict_double(s, context) * factor;
  if (value == 0.0) throw std::invalid_argument("zero denominator in '" + context + "'");
  return value;
}

}  // namespace

double parse_time(const std::string& text, double hom_time, double revival_time) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) throw std::invalid_argument("empty time expression");
  if (s == "hom") return hom_time;
  if (s == "revival") return revival_time;

  auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_strict_double(s, text);

  double coefficient = 1.0;
  std::string head = s.substr(0, pi_pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (!head.empty()) coefficient = parse_strict_double(head, text);

  std::string tail = s.substr(pi_pos + 2);
  double denominator = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/')
      throw std::invalid_argument("cannot parse '" + text + "' as a time");
    denominator = parse_denominator(tail.substr(1), text);
  }
  return coefficient * kPi / denominator;
}

namespace {

struct OutputOpts {
  std::string path;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOpts& out) {
  cmd->add_option("-o,--output", out.path, "output file, '-' or empty for stdout");
  cmd->add_option("-f,--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void emit_with(const OutputOpts& out, const ExperimentResult& result) {
  emit(result, out.format == "json" ? OutputFormat::json : OutputFormat::csv, out.path);
}

Cell num(double v) { return Cell{v}; }
Cell num(int v) { return Cell{static_cast<std::int64_t>(v)}; }

std::vector<std::string> occupation_columns(const std::string& leading, int total) {
  std::vector<std::string> cols{leading};
  for (int n = 0; n <= total; ++n) cols.push_back("p_" + std::to_string(n));
  return cols;
}

// grid helper shared by the series and sweep commands
std::vector<double> uniform_grid(double from, double to, double step) {
  if (step <= 0.0) throw std::invalid_argument("step must be positive");
  if (to < from) throw std::invalid_argument("empty grid");
  long count = std::lround(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) grid[i] = from + step * static_cast<double>(i);
  return grid;
}

// Evaluates fn over the grid on a small worker pool; slot i of the output
// always belongs to grid[i], so the merge is deterministic.
template <typename Fn>
auto fan_out(const std::vector<double>& grid, Fn fn)
    -> std::vector<decltype(fn(0.0))> {
  std::vector<decltype(fn(0.0))> out(grid.size());
  unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
  workers = std::min<unsigned>(workers, static_cast<unsigned>(grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid[i]);
    return out;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w]() {
      for (std::size_t i = w; i < grid.size(); i += workers) out[i] = fn(grid[i]);
    }));
  }
  for (auto& f : futures) f.get();  // rethrows worker exceptions
  return out;
}

void register_hom(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    int na = 1, nb = 1;
    double gamma = 0.0;
    std::string t = "pi/4";
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand(
      "hom", "collide n_a against n_b particles on a double well, report p_n");
  cmd->add_option("--na", p->na, "particles starting in well A")->check(CLI::NonNegativeNumber);
  cmd->add_option("--nb", p->nb, "particles starting in well B")->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", p->gamma, "interaction over tunneling rate");
  cmd->add_option("--t", p->t, "measurement time (default pi/4, the balanced splitter)");
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t = parse_time(p->t, kPi / 4.0, kPi / 2.0);
    Distribution d = run_hom({p->na, p->nb, p->gamma, t});
    ExperimentResult r;
    r.metadata = {{"command", std::string("hom")}, {"n_a", num(p->na)},   {"n_b", num(p->nb)},
                  {"gamma", num(p->gamma)},        {"t", num(t)}};
    r.columns = {"n", "p_n"};
    for (int n = 0; n < d.size(); ++n)
      r.rows.push_back({num(n), num(d.probabilities()(n))});
    emit_with(*opts, r);
  });
}

void register_hom_series(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    int na = 1, nb = 1;
    double gamma = 0.0;
    std::string t_max = "2pi";
    int points = 201;
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand("hom-series", "collision outcome distribution versus time");
  cmd->add_option("--na", p->na)->check(CLI::NonNegativeNumber);
  cmd->add_option("--nb", p->nb)->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", p->gamma, "interaction over tunneling rate");
  cmd->add_option("--t-max", p->t_max, "end of the time grid");
  cmd->add_option("--points", p->points, "number of grid points")->check(CLI::PositiveNumber);
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t_max = parse_time(p->t_max, kPi / 4.0, kPi / 2.0);
    auto series = hom_time_series({p->na, p->nb, p->gamma}, t_max, p->points);
    ExperimentResult r;
    r.metadata = {{"command", std::string("hom-series")},
                  {"n_a", num(p->na)},
                  {"n_b", num(p->nb)},
                  {"gamma", num(p->gamma)},
                  {"t_max", num(t_max)},
                  {"points", num(p->points)}};
    r.columns = occupation_columns("t", p->na + p->nb);
    for (const auto& [t, dist] : series) {
      std::vector<Cell> row{num(t)};
      for (int n = 0; n < dist.size(); ++n) row.push_back(num(dist.probabilities()(n)));
      r.rows.push_back(std::move(row));
    }
    emit_with(*opts, r);
  });
}

void register_line_and_square(CLI::App& app) {
  for (bool square : {false, true}) {
    auto opts = std::make_shared<OutputOpts>();
    auto t_str = std::make_shared<std::string>("hom");
    const char* name = square ? "four-well" : "three-well";
    const char* desc = square ? "one particle on each diagonal of the four-well square"
                              : "one particle in each outer well of the three-well line";
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("--t", *t_str,
                    "evolution time ('hom' = balanced splitting, 'revival' = return)");
    add_output_options(cmd, *opts);
    cmd->callback([square, t_str, opts]() {
      double hom_t = square ? kPi / 4.0 : kPi / (2.0 * std::numbers::sqrt2);
      double t = parse_time(*t_str, hom_t, 2.0 * hom_t);
      Distribution d = square ? run_four_well(t) : run_three_well(t);
      ExperimentResult r;
      r.metadata = {{"command", std::string(square ? "four-well" : "three-well")},
                    {"t", num(t)}};
      r.columns = {"configuration", "probability"};
      for (int i = 0; i < d.size(); ++i)
        r.rows.push_back({Cell{d.labels()[i].label()}, num(d.probabilities()(i))});
      emit_with(*opts, r);
    });
  }
}

void register_bell(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    BellSpec spec;
    std::string t = "pi/4";
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand(
      "bell", "parity-correlation combination Q over a tunneling-rate offset grid");
  cmd->add_option("--gamma", p->spec.gamma, "interaction over tunneling rate");
  cmd->add_option("--t", p->t, "measurement time");
  cmd->add_option("--xi-min", p->spec.xi_min);
  cmd->add_option("--xi-max", p->spec.xi_max);
  cmd->add_option("--xi-step", p->spec.xi_step)->check(CLI::PositiveNumber);
  cmd->add_option("--refine-tol", p->spec.refine_tol, "width of the final refinement bracket")
      ->check(CLI::PositiveNumber);
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    p->spec.measure_time = parse_time(p->t, kPi / 4.0, kPi / 2.0);
    auto grid = chsh_grid(p->spec);
    ChshOptimum best = maximize_chsh(p->spec);
    ExperimentResult r;
    r.metadata = {{"command", std::string("bell")},
                  {"gamma", num(p->spec.gamma)},
                  {"t", num(p->spec.measure_time)},
                  {"q_max", num(best.q_max)},
                  {"xi_star", num(best.xi_star)}};
    r.columns = {"xi", "Q"};
    for (const auto& [xi, q] : grid) r.rows.push_back({num(xi), num(q)});
    emit_with(*opts, r);
  });
}

void register_meanfield(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    int n = 8;
    double gamma = 0.0;
    int na0 = -1;  // -1 means all particles in well A
    std::string t_max = "10";
    int points = 1001;
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand(
      "meanfield", "exact versus mean-field population of well A over time");
  cmd->add_option("--n", p->n, "total particle count")->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", p->gamma, "interaction over tunneling rate");
  cmd->add_option("--na0", p->na0, "particles starting in well A (default: all)");
  cmd->add_option("--t-max", p->t_max, "end of the time grid");
  cmd->add_option("--points", p->points)->check(CLI::PositiveNumber);
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t_max = parse_time(p->t_max, kPi / 4.0, kPi / 2.0);
    int na0 = p->na0 < 0 ? p->n : p->na0;
    Trace exact = exact_na_trace(p->n, p->gamma, na0, t_max, p->points);
    Trace mf = mean_field_trace({p->n, p->gamma, static_cast<double>(na0), t_max, p->points});
    ExperimentResult r;
    r.metadata = {{"command", std::string("meanfield")},
                  {"n", num(p->n)},
                  {"gamma", num(p->gamma)},
                  {"na0", num(na0)},
                  {"t_max", num(t_max)},
                  {"points", num(p->points)},
                  {"gamma_critical", num(critical_gamma(p->n))}};
    r.columns = {"t", "N_A_exact", "N_A_meanfield"};
    for (int i = 0; i < p->points; ++i)
      r.rows.push_back({num(exact.times[i]), num(exact.values[i]), num(mf.values[i])});
    emit_with(*opts, r);
  });
}

void register_selftrap(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    int n = 8;
    double gamma = 0.5;
    std::string t_max = "10";
    int points = 1001;
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand(
      "selftrap", "mean-field population against its elliptic-function closed form");
  cmd->add_option("--n", p->n, "total particle count")->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", p->gamma, "interaction over tunneling rate");
  cmd->add_option("--t-max", p->t_max, "end of the time grid");
  cmd->add_option("--points", p->points)->check(CLI::PositiveNumber);
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t_max = parse_time(p->t_max, kPi / 4.0, kPi / 2.0);
    Trace mf = mean_field_trace(
        {p->n, p->gamma, static_cast<double>(p->n), t_max, p->points});
    double quarter = p->n * p->gamma / 4.0;
    ExperimentResult r;
    r.metadata = {{"command", std::string("selftrap")},
                  {"n", num(p->n)},
                  {"gamma", num(p->gamma)},
                  {"t_max", num(t_max)},
                  {"points", num(p->points)},
                  {"gamma_critical", num(critical_gamma(p->n))},
                  {"elliptic_parameter", num(quarter * quarter)}};
    r.columns = {"t", "N_A_meanfield", "N_A_closedform"};
    for (int i = 0; i < p->points; ++i)
      r.rows.push_back({num(mf.times[i]), num(mf.values[i]),
                        num(closed_form_na(mf.times[i], p->n, p->gamma))});
    emit_with(*opts, r);
  });
}

void register_config_trap(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    int n = 8;
    double gamma = 10.0;
    int na0 = 4;
    std::string t_max = "20";
    int points = 2001;
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand(
      "config-trap", "two-well configuration probabilities versus time at strong interaction");
  cmd->add_option("--n", p->n, "total particle count")->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", p->gamma, "interaction over tunneling rate");
  cmd->add_option("--na0", p->na0, "particles starting in well A")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--t-max", p->t_max, "end of the time grid");
  cmd->add_option("--points", p->points)->check(CLI::PositiveNumber);
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t_max = parse_time(p->t_max, kPi / 4.0, kPi / 2.0);
    OccupationTraces traces =
        configuration_trapping_trace(p->n, p->gamma, p->na0, t_max, p->points);
    ExperimentResult r;
    r.metadata = {{"command", std::string("config-trap")}, {"n", num(p->n)},
                  {"gamma", num(p->gamma)},                {"na0", num(p->na0)},
                  {"t_max", num(t_max)},                   {"points", num(p->points)}};
    r.columns = occupation_columns("t", p->n);
    for (int i = 0; i < p->points; ++i) {
      std::vector<Cell> row{num(traces.times[i])};
      for (int n = 0; n <= p->n; ++n) row.push_back(num(traces.probabilities(i, n)));
      r.rows.push_back(std::move(row));
    }
    emit_with(*opts, r);
  });
}

void register_sweep(CLI::App& app) {
  auto opts = std::make_shared<OutputOpts>();
  struct Params {
    std::string param;
    double from = 0.0, to = 5.0, step = 0.01;
    int na = 1, nb = 1;
    double gamma = 0.0;
    std::string t = "pi/4";
  };
  auto p = std::make_shared<Params>();
  auto* cmd = app.add_subcommand("sweep", "sweep gamma (collision) or xi (correlation Q)");
  cmd->add_option("--param", p->param, "gamma or xi")
      ->required()
      ->check(CLI::IsMember({"gamma", "xi"}));
  cmd->add_option("--from", p->from);
  cmd->add_option("--to", p->to);
  cmd->add_option("--step", p->step)->check(CLI::PositiveNumber);
  cmd->add_option("--na", p->na, "collision sweep: particles starting in well A")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--nb", p->nb, "collision sweep: particles starting in well B")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", p->gamma, "correlation sweep: interaction over tunneling rate");
  cmd->add_option("--t", p->t, "measurement time");
  add_output_options(cmd, *opts);
  cmd->callback([p, opts]() {
    double t = parse_time(p->t, kPi / 4.0, kPi / 2.0);
    std::vector<double> grid = uniform_grid(p->from, p->to, p->step);
    ExperimentResult r;
    if (p->param == "gamma") {
      auto dists = fan_out(grid, [&](double gamma) {
        return run_hom({p->na, p->nb, gamma, t}).probabilities();
      });
      r.metadata = {{"command", std::string("sweep")},
                    {"param", std::string("gamma")},
                    {"n_a", num(p->na)},
                    {"n_b", num(p->nb)},
                    {"t", num(t)},
                    {"from", num(p->from)},
                    {"to", num(p->to)},
                    {"step", num(p->step)}};
      if (p->na == 1 && p->nb == 1) {
        try {
          r.metadata.emplace_back("gamma_star",
                                  num(find_equal_probability_gamma(1, 1, p->from, p->to)));
        } catch (const NumericalError&) {
          // no crossing inside the window; leave the metadata out
        }
      }
      r.columns = occupation_columns("gamma", p->na + p->nb);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{num(grid[i])};
        for (int n = 0; n < dists[i].size(); ++n) row.push_back(num(dists[i](n)));
        r.rows.push_back(std::move(row));
      }
    } else {
      BellSpec spec;
      spec.gamma = p->gamma;
      spec.measure_time = t;
      auto qs = fan_out(grid, [&](double xi) { return chsh_q(xi, spec); });
      r.metadata = {{"command", std::string("sweep")}, {"param", std::string("xi")},
                    {"gamma", num(p->gamma)},          {"t", num(t)},
                    {"from", num(p->from)},            {"to", num(p->to)},
                    {"step", num(p->step)}};
      r.columns = {"xi", "Q"};
      for (std::size_t i = 0; i < grid.size(); ++i)
        r.rows.push_back({num(grid[i]), num(qs[i])});
    }
    emit_with(*opts, r);
  });
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"simulator for identical bosons in arrays of tunnel-coupled wells"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.get_formatter()->column_width(40);

  register_hom(app);
  register_hom_series(app);
  register_line_and_square(app);
  register_bell(app);
  register_meanfield(app);
  register_selftrap(app);
  register_config_trap(app);
  register_sweep(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace wellsim::cli
