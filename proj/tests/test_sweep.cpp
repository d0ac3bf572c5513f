#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "xqm/sweep.hpp"

using namespace xqm;

namespace {

SweepSpec fig1_panel_spec(Sign sign) {
  SweepSpec spec;
  spec.quantities = {Quantity::concurrence};
  spec.sign = sign;
  spec.channel = std::nullopt;
  spec.alphas = {0.5};
  spec.betas = {0.5, 0.7, 1.0, 1.5};
  for (int i = 0; i <= 100; ++i) spec.qs.push_back(0.01 * i);
  return spec;
}

}  // namespace

TEST_CASE("fig1-style sweep has 404 rows with the documented endpoints") {
  const std::vector<SweepRow> rows = run_sweep(fig1_panel_spec(Sign::minus));
  CHECK(rows.size() == 404);
  for (const SweepRow& r : rows) {
    CHECK(r.channel == "none");
    CHECK(r.quantity == "concurrence");
    if (r.q == 0.0) CHECK(r.closed_form == doctest::Approx(0.0));
    CHECK(r.abs_dev < 1e-10);
  }
  // Maximal at q=1 for each beta.
  for (double beta : {0.5, 0.7, 1.0, 1.5}) {
    double last = -1.0, best = -1.0;
    for (const SweepRow& r : rows)
      if (r.beta == beta) {
        best = std::max(best, r.closed_form);
        if (r.q == 1.0) last = r.closed_form;
      }
    CHECK(last == doctest::Approx(best));
  }
}

TEST_CASE("channel sweep rows carry both routes and are monotone in p") {
  SweepSpec spec;
  spec.quantities = {Quantity::qfi, Quantity::skew, Quantity::concurrence};
  spec.sign = Sign::minus;
  spec.channel = ChannelKind::phase_damping;
  spec.alphas = {0.5};
  spec.betas = {0.7};
  spec.qs = {0.9};
  for (int i = 0; i <= 20; ++i) spec.ps.push_back(0.05 * i);
  const std::vector<SweepRow> rows = run_sweep(spec);
  CHECK(rows.size() == 3 * 21);
  double prev[3] = {1e18, 1e18, 1e18};
  for (const SweepRow& r : rows) {
    const int idx = r.quantity == "qfi" ? 0 : (r.quantity == "skew" ? 1 : 2);
    CHECK(r.oracle <= prev[idx] + 1e-7);
    prev[idx] = r.oracle;
    CHECK(r.s == doctest::Approx(1.0 - r.p));
  }
}

TEST_CASE("deterministic CSV output") {
  SweepSpec spec;
  spec.quantities = {Quantity::concurrence};
  spec.sign = Sign::plus;
  spec.channel = std::nullopt;
  spec.alphas = {0.5};
  spec.betas = {0.5, 1.0};
  spec.qs = {0.0, 0.5, 1.0};
  const std::vector<SweepRow> a = run_sweep(spec);
  const std::vector<SweepRow> b = run_sweep(spec);
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a, {"meta"});
  write_sweep_csv(sb, b, {"meta"});
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().find("family,sign,alpha,beta,q,channel,p,s,quantity,closed_form,oracle,abs_dev") !=
        std::string::npos);
}

TEST_CASE("invalid sweep specs are rejected") {
  SweepSpec spec;
  spec.quantities = {Quantity::qfi};
  spec.alphas = {0.5};
  spec.betas = {0.5};
  spec.qs = {};  // empty grid
  CHECK_THROWS_AS((void)run_sweep(spec), OutOfDomain);

  spec.qs = {0.5};
  spec.channel = ChannelKind::depolarizing;
  spec.ps = {};
  CHECK_THROWS_AS((void)run_sweep(spec), OutOfDomain);

  spec.ps = {1.5};
  CHECK_THROWS_AS((void)run_sweep(spec), OutOfDomain);
}

TEST_CASE("figure panel presets") {
  CHECK_THROWS_AS((void)figure_panels("fig9", {}), OutOfDomain);
  const auto fig1 = figure_panels("fig1", {});
  CHECK(fig1.size() == 2);
  CHECK(fig1[0].spec.qs.size() == 101);
  const auto fig3 = figure_panels("fig3", {});
  CHECK(fig3.size() == 3);
  for (const FigurePanel& p : fig3) {
    CHECK(p.spec.channel == ChannelKind::depolarizing);
    CHECK(p.spec.qs.size() == 1);
    CHECK(p.spec.qs[0] == doctest::Approx(0.9));
    CHECK(p.x_column == "p");
  }
  FigureOverrides ov;
  ov.q = 0.7;
  CHECK(figure_panels("fig2", ov)[0].spec.qs[0] == doctest::Approx(0.7));
}
