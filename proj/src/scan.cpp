#include "datxy/scan.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "datxy/blocks.hpp"
#include "datxy/ed.hpp"
#include "datxy/entanglement.hpp"
#include "datxy/quench.hpp"

namespace datxy {

namespace {

const std::map<std::string, Quantity>& quantity_names() {
  static const std::map<std::string, Quantity> m = {
      {"LN", Quantity::LN},         {"dLN_dl1", Quantity::dLN_dl1},
      {"dLN_dl2", Quantity::dLN_dl2}, {"Mx", Quantity::Mx},
      {"S", Quantity::S},           {"Cchi", Quantity::Cchi},
      {"gap", Quantity::Gap},       {"mz", Quantity::Mz},
      {"correlators", Quantity::Correlators}, {"phase_label", Quantity::PhaseLabel}};
  return m;
}

bool allowed_axis(const std::string& n) {
  return n == "lambda1" || n == "lambda2" || n == "d" || n == "betaJ" || n == "gamma" ||
         n == "t";
}

struct Row {
  std::vector<std::string> values;
  std::string branch;
  std::string flag = "ok";
  bool numeric_failure = false;
};

std::vector<std::string> nan_values(Quantity q) {
  return std::vector<std::string>(value_columns(q).size(), "nan");
}

std::vector<std::string> correlator_values(const CorrelatorSet& cs) {
  return {fmt_num(cs.cxx), fmt_num(cs.cyy), fmt_num(cs.cxy), fmt_num(cs.cyx),
          fmt_num(cs.czz), fmt_num(cs.mz_e), fmt_num(cs.mz_o)};
}

std::vector<std::string> values_from_set(Quantity q, const CorrelatorSet& cs, double ln) {
  switch (q) {
    case Quantity::LN:
      return {fmt_num(ln)};
    case Quantity::S:
      return {fmt_num(pm_discriminator(cs))};
    case Quantity::Cchi:
      return {fmt_num(chiral_order(cs))};
    case Quantity::Mz:
      return {fmt_num(cs.mz_e), fmt_num(cs.mz_o)};
    case Quantity::Correlators:
      return correlator_values(cs);
    default:
      throw DomainError("quantity " + to_string(q) + " is not available along a time axis");
  }
}

Row evaluate_static(const ModelParams& p, const ScanGrid& g) {
  Row r;
  const auto& o = g.options;
  try {
    p.validate();
    switch (g.quantity) {
      case Quantity::LN:
      case Quantity::S:
      case Quantity::Cchi:
      case Quantity::Mz:
      case Quantity::Correlators: {
        const CorrelatorSet cs = equilibrium_correlators(p, o.quad);
        r.branch = cs.branch;
        const double ln =
            g.quantity == Quantity::LN ? log_negativity(assemble_rdm(cs)) : 0.0;
        r.values = values_from_set(g.quantity, cs, ln);
        break;
      }
      case Quantity::dLN_dl1:
      case Quantity::dLN_dl2: {
        const FieldAxis ax =
            g.quantity == Quantity::dLN_dl1 ? FieldAxis::Lambda1 : FieldAxis::Lambda2;
        r.values = {fmt_num(ent_derivative(p, ax, o.fd_step, o.quad))};
        break;
      }
      case Quantity::Mx:
        r.values = {fmt_num(staggered_mx(p, o.ed_sites, o.hx))};
        r.branch = "ed";
        break;
      case Quantity::Gap:
        r.values = {fmt_num(min_gap(p, o.gap_points))};
        r.branch = "bdg";
        break;
      case Quantity::PhaseLabel: {
        ClassifyOptions co;
        co.thresholds = o.thresholds;
        co.ed_sites = o.ed_sites;
        co.hx = o.hx;
        co.gap_points = o.gap_points;
        co.quad = o.quad;
        try {
          const PhaseLabel pl = classify_point(p, co);
          const auto& e = pl.evidence;
          r.values = {to_string(pl.label), fmt_num(e.Mx), fmt_num(e.S), fmt_num(e.Cchi),
                      fmt_num(e.gap)};
        } catch (const Unclassified&) {
          r.values = {"unclassified", "nan", "nan", "nan", "nan"};
          r.flag = "unclassified";
        }
        break;
      }
    }
  } catch (const NonConvergence&) {
    r.values = nan_values(g.quantity);
    r.flag = "nonconvergence";
    r.numeric_failure = true;
  } catch (const NotAState&) {
    r.values = nan_values(g.quantity);
    r.flag = "not_a_state";
    r.numeric_failure = true;
  }
  return r;
}

void write_row(std::ostream& out, const std::vector<double>& coords, const Row& r,
               const ModelParams& p, double abs_tol) {
  std::string line;
  for (double c : coords) line += fmt_num(c) + ",";
  for (const auto& v : r.values) line += v + ",";
  line += to_string(classify_regime(p)) + "," + (r.branch.empty() ? "-" : r.branch) + "," +
          r.flag + "," + kVersion + "," + fmt_num(abs_tol) + "\n";
  out << line;
}

}  // namespace

Quantity parse_quantity(const std::string& s) {
  const auto& m = quantity_names();
  const auto it = m.find(s);
  if (it == m.end()) throw DomainError("unknown quantity '" + s + "'");
  return it->second;
}

std::string to_string(Quantity q) {
  for (const auto& [k, v] : quantity_names())
    if (v == q) return k;
  return "?";
}

std::vector<std::string> value_columns(Quantity q) {
  switch (q) {
    case Quantity::LN:
      return {"ln"};
    case Quantity::dLN_dl1:
      return {"dln_dlambda1"};
    case Quantity::dLN_dl2:
      return {"dln_dlambda2"};
    case Quantity::Mx:
      return {"mx"};
    case Quantity::S:
      return {"s"};
    case Quantity::Cchi:
      return {"cchi"};
    case Quantity::Gap:
      return {"gap"};
    case Quantity::Mz:
      return {"mz_e", "mz_o"};
    case Quantity::Correlators:
      return {"cxx", "cyy", "cxy", "cyx", "czz", "mz_e", "mz_o"};
    case Quantity::PhaseLabel:
      return {"label", "mx", "s", "cchi", "gap"};
  }
  return {};
}

void ScanGrid::validate() const {
  if (!allowed_axis(x.name)) throw DomainError("unsupported x axis '" + x.name + "'");
  if (x.count < 2) throw DomainError("x axis needs count >= 2");
  const bool two_d = !y.name.empty();
  if (two_d) {
    if (!allowed_axis(y.name)) throw DomainError("unsupported y axis '" + y.name + "'");
    if (y.count < 2) throw DomainError("y axis needs count >= 2");
    if (y.name == x.name) throw DomainError("x and y axes must differ");
  }
  if (x.name == "t" || y.name == "t") {
    switch (quantity) {
      case Quantity::LN:
      case Quantity::S:
      case Quantity::Cchi:
      case Quantity::Mz:
      case Quantity::Correlators:
        break;
      default:
        throw DomainError("quantity " + to_string(quantity) + " cannot be scanned along t");
    }
  }
  options.quad.validate();
  options.thresholds.validate();
  if (options.ed_sites < 4 || options.ed_sites > kMaxEDSites)
    throw DomainError("ed_sites must lie in [4, 12]");
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DATXY_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  const int w = static_cast<int>(std::min<std::size_t>(workers, n));
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_scan(const ScanGrid& grid, std::ostream& out, const std::string& json_header) {
  grid.validate();
  const bool two_d = !grid.y.name.empty();
  const int ny = two_d ? grid.y.count : 1;
  const int nx = grid.x.count;
  const int workers = worker_count(grid.options.threads);

  out << "# " << json_header << "\n";
  std::string head = grid.x.name;
  if (two_d) head += "," + grid.y.name;
  for (const auto& c : value_columns(grid.quantity)) head += "," + c;
  head += ",regime,branch,flag,version,abs_tol\n";
  out << head;

  auto params_at = [&](int ix, int iy) {
    ModelParams p = grid.fixed;
    if (grid.x.name != "t") set_coordinate(p, grid.x.name, grid.x.value(ix));
    if (two_d && grid.y.name != "t") set_coordinate(p, grid.y.name, grid.y.value(iy));
    return p;
  };

  std::vector<Row> rows(static_cast<std::size_t>(nx) * ny);
  const bool time_axis = grid.x.name == "t" || grid.y.name == "t";
  if (!time_axis) {
    parallel_for(rows.size(), workers, [&](std::size_t i) {
      const int iy = static_cast<int>(i / nx), ix = static_cast<int>(i % nx);
      rows[i] = evaluate_static(params_at(ix, iy), grid);
    });
  } else {
    // One trace per value of the non-time axis.
    const bool t_is_x = grid.x.name == "t";
    const Axis& ta = t_is_x ? grid.x : grid.y;
    const int nother = t_is_x ? ny : nx;
    std::vector<double> times(ta.count);
    for (int i = 0; i < ta.count; ++i) times[i] = ta.value(i);
    parallel_for(nother, workers, [&](std::size_t o) {
      const ModelParams p = t_is_x ? params_at(0, static_cast<int>(o))
                                   : params_at(static_cast<int>(o), 0);
      std::vector<Row> trace_rows(ta.count);
      try {
        QuenchSpec qs;
        qs.initial = p;
        qs.t_grid = times;
        qs.avg_window = {times.front(), times.back()};
        const TimeTrace tr = evolve_alt(qs);
        for (int i = 0; i < ta.count; ++i) {
          trace_rows[i].values = values_from_set(grid.quantity, tr.values[i], tr.ln[i]);
          trace_rows[i].branch = "blocks";
        }
      } catch (const NonConvergence&) {
        for (auto& r : trace_rows) {
          r.values = nan_values(grid.quantity);
          r.flag = "nonconvergence";
          r.numeric_failure = true;
        }
      } catch (const NotAState&) {
        for (auto& r : trace_rows) {
          r.values = nan_values(grid.quantity);
          r.flag = "not_a_state";
          r.numeric_failure = true;
        }
      }
      for (int i = 0; i < ta.count; ++i) {
        const std::size_t idx = t_is_x ? o * nx + i : static_cast<std::size_t>(i) * nx + o;
        rows[idx] = std::move(trace_rows[i]);
      }
    });
  }

  bool failed = false;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Row& r = rows[static_cast<std::size_t>(iy) * nx + ix];
      std::vector<double> coords{grid.x.value(ix)};
      if (two_d) coords.push_back(grid.y.value(iy));
      write_row(out, coords, r, params_at(ix, iy), grid.options.quad.abs_tol);
      failed = failed || r.numeric_failure;
    }
  return failed ? 3 : 0;
}

}  // namespace datxy
