// Parameter sweeps over the quasi-Werner families: deterministic CSV rows
// carrying both the closed-form and the oracle value for every grid point.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xqm/channels.hpp"
#include "xqm/quasi_werner.hpp"

namespace xqm {

enum class Quantity { qfi, skew, concurrence };

const char* quantity_name(Quantity q);

struct SweepSpec {
  std::vector<Quantity> quantities;  // row order follows this list
  Sign sign = Sign::minus;
  std::optional<ChannelKind> channel;  // nullopt = undamped
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> qs;
  std::vector<double> ps;  // ignored (single p=0 row) when channel is empty
  double fd_step = 1e-5;
};

struct SweepRow {
  std::string family;
  std::string sign;
  double alpha = 0.0, beta = 0.0, q = 0.0;
  std::string channel;
  double p = 0.0, s = 1.0;
  std::string quantity;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_dev = 0.0;
  bool closed_defined = true;
};

// Throws OutOfDomain on an empty grid or out-of-range values. Rows are
// evaluated concurrently but emitted in lexicographic grid order
// (alpha, beta, q, p, quantity).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& metadata);

// Figure presets; q for the channel figures defaults to 0.9 and alpha to
// 0.5, beta sweeping {0.5, 0.7, 1.0, 1.5}.
struct FigurePanel {
  std::string name;  // file stem
  std::string title;
  SweepSpec spec;
  Quantity quantity;  // curve quantity, plotted against the x column
  std::string x_column;  // "q" or "p"
};

struct FigureOverrides {
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<Sign> sign;
};

// Throws OutOfDomain for an unknown id ("fig1".."fig4").
std::vector<FigurePanel> figure_panels(const std::string& id, const FigureOverrides& ov);

}  // namespace xqm
