#include "xqm/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "xqm/metrology.hpp"
#include "xqm/oracle.hpp"

namespace xqm {

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::qfi: return "qfi";
    case Quantity::skew: return "skew";
    case Quantity::concurrence: return "concurrence";
  }
  return "?";
}

namespace {

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridPoint {
  double alpha, beta, q, p;
  Quantity quantity;
};

SweepRow evaluate_point(const SweepSpec& spec, const GridPoint& g) {
  SweepRow row;
  row.family = spec.sign == Sign::plus ? "quasiWernerPlus" : "quasiWernerMinus";
  row.sign = sign_name(spec.sign);
  row.alpha = g.alpha;
  row.beta = g.beta;
  row.q = g.q;
  row.channel = spec.channel ? channel_name(*spec.channel) : "none";
  row.p = spec.channel ? g.p : 0.0;
  row.s = 1.0 - row.p;
  row.quantity = quantity_name(g.quantity);

  const QuasiWernerParams params{g.alpha, g.beta, g.q, spec.sign};
  // Singular closed-form points (pure blocks at q=1, vanished printed
  // denominators) stay oracle-only and are flagged in the CSV.
  auto guarded = [&row](auto&& fn) {
    try {
      row.closed_form = fn();
    } catch (const SingularBlock&) {
      row.closed_defined = false;
    } catch (const SingularSqrt&) {
      row.closed_defined = false;
    }
  };
  if (!spec.channel) {
    ParametrizedFamily fam = mixing_family(g.alpha, g.beta, spec.sign);
    fam.with_fd_step(spec.fd_step);
    switch (g.quantity) {
      case Quantity::qfi:
        row.oracle = qfi_oracle(fam, g.q);
        guarded([&] { return qfi_closed_undamped(params); });
        break;
      case Quantity::skew:
        row.oracle = skew_oracle(fam, g.q);
        guarded([&] { return skew_closed_undamped(params); });
        break;
      case Quantity::concurrence:
        row.oracle = concurrence_wootters(fam.matrix(g.q));
        row.closed_form = concurrence_closed(params);
        break;
    }
  } else {
    const Channel ch = make_channel(*spec.channel, g.p);
    ParametrizedFamily fam = mixing_family_evolved(g.alpha, g.beta, spec.sign, ch);
    fam.with_fd_step(spec.fd_step);
    switch (g.quantity) {
      case Quantity::qfi:
        row.oracle = qfi_oracle(fam, g.q);
        guarded([&] { return qfi_closed(params, ch); });
        break;
      case Quantity::skew:
        row.oracle = skew_oracle(fam, g.q);
        guarded([&] { return skew_closed(params, ch); });
        break;
      case Quantity::concurrence:
        row.oracle = concurrence_wootters(fam.matrix(g.q));
        row.closed_form = concurrence_closed(params, ch);
        break;
    }
  }
  if (row.closed_defined && std::isfinite(row.closed_form)) {
    row.abs_dev = std::abs(row.closed_form - row.oracle);
  } else {
    row.closed_defined = false;
    row.closed_form = std::nan("");
    row.abs_dev = std::nan("");
  }
  return row;
}

void validate(const SweepSpec& spec) {
  if (spec.quantities.empty()) throw OutOfDomain("sweep needs at least one quantity");
  if (spec.alphas.empty() || spec.betas.empty() || spec.qs.empty())
    throw OutOfDomain("sweep grid is empty");
  if (spec.channel && spec.ps.empty()) throw OutOfDomain("channel sweep needs a p grid");
  for (double a : spec.alphas)
    if (!(a > 0.0)) throw OutOfDomain("alpha must be positive");
  for (double b : spec.betas)
    if (!(b > 0.0)) throw OutOfDomain("beta must be positive");
  for (double q : spec.qs)
    if (!(q >= 0.0 && q <= 1.0)) throw OutOfDomain("q outside [0,1]");
  for (double p : spec.ps)
    if (!(p >= 0.0 && p <= 1.0)) throw OutOfDomain("p outside [0,1]");
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<GridPoint> grid;
  const std::vector<double> ps = spec.channel ? spec.ps : std::vector<double>{0.0};
  for (double a : spec.alphas)
    for (double b : spec.betas)
      for (double q : spec.qs)
        for (double p : ps)
          for (Quantity qty : spec.quantities) grid.push_back(GridPoint{a, b, q, p, qty});

  std::vector<SweepRow> rows(grid.size());
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        rows[i] = evaluate_point(spec, grid[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(grid.size());
        return;
      }
    }
  };
  if (workers == 1 || grid.size() < 8) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& metadata) {
  for (const std::string& m : metadata) os << "# " << m << "\n";
  os << "family,sign,alpha,beta,q,channel,p,s,quantity,closed_form,oracle,abs_dev\n";
  for (const SweepRow& r : rows) {
    os << r.family << ',' << r.sign << ',' << csv_double(r.alpha) << ',' << csv_double(r.beta)
       << ',' << csv_double(r.q) << ',' << r.channel << ',' << csv_double(r.p) << ','
       << csv_double(r.s) << ',' << r.quantity << ','
       << (r.closed_defined ? csv_double(r.closed_form) : "nan") << ',' << csv_double(r.oracle)
       << ',' << (r.closed_defined ? csv_double(r.abs_dev) : "nan") << "\n";
  }
}

namespace {

std::vector<double> steps(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-12) break;
    v.push_back(std::min(x, hi));
  }
  return v;
}

}  // namespace

std::vector<FigurePanel> figure_panels(const std::string& id, const FigureOverrides& ov) {
  const double alpha = ov.alpha.value_or(0.5);
  const double q_pinned = ov.q.value_or(0.9);
  const std::vector<double> betas = {0.5, 0.7, 1.0, 1.5};

  std::vector<FigurePanel> panels;
  if (id == "fig1") {
    const std::vector<Sign> signs =
        ov.sign ? std::vector<Sign>{*ov.sign} : std::vector<Sign>{Sign::plus, Sign::minus};
    for (Sign sign : signs) {
      FigurePanel panel;
      panel.name = std::string("fig1_") + sign_name(sign);
      panel.title = std::string("concurrence vs q (") + sign_name(sign) + " family)";
      panel.quantity = Quantity::concurrence;
      panel.x_column = "q";
      panel.spec.quantities = {Quantity::concurrence};
      panel.spec.sign = sign;
      panel.spec.channel = std::nullopt;
      panel.spec.alphas = {alpha};
      panel.spec.betas = betas;
      panel.spec.qs = steps(0.0, 1.0, 0.01);
      panels.push_back(std::move(panel));
    }
    return panels;
  }

  ChannelKind kind;
  std::string stem;
  if (id == "fig2") {
    kind = ChannelKind::phase_damping;
    stem = "fig2";
  } else if (id == "fig3") {
    kind = ChannelKind::depolarizing;
    stem = "fig3";
  } else if (id == "fig4") {
    kind = ChannelKind::amplitude_damping;
    stem = "fig4";
  } else {
    throw OutOfDomain("unknown figure id: " + id);
  }

  const Sign sign = ov.sign.value_or(Sign::minus);
  const char* panel_letter[] = {"a", "b", "c"};
  const Quantity qty[] = {Quantity::qfi, Quantity::concurrence, Quantity::skew};
  char qlabel[24];
  std::snprintf(qlabel, sizeof(qlabel), "%.4g", q_pinned);
  for (int i = 0; i < 3; ++i) {
    FigurePanel panel;
    panel.name = stem + "_" + panel_letter[i] + "_" + quantity_name(qty[i]);
    panel.title = std::string(quantity_name(qty[i])) + " vs p (" + channel_name(kind) + ", " +
                  sign_name(sign) + " family, q=" + qlabel + ")";
    panel.quantity = qty[i];
    panel.x_column = "p";
    panel.spec.quantities = {qty[i]};
    panel.spec.sign = sign;
    panel.spec.channel = kind;
    panel.spec.alphas = {alpha};
    panel.spec.betas = betas;
    panel.spec.qs = {q_pinned};
    panel.spec.ps = steps(0.0, 1.0, 0.01);
    panels.push_back(std::move(panel));
  }
  return panels;
}

}  // namespace xqm
