/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/perf.h
 * \brief Scalar work proxies over counter traces, the affine proxy-to-time
 *        model, latency envelopes, and the bitset-scan engine variant.
 *
 * Counters, not wall time, are the acceptance surface: the asymptotic claims
 * are structural, and the affine fit is the bridge from structure to
 * hardware-contingent time.
 */
#ifndef GCD_PERF_H_
#define GCD_PERF_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcd/counters.h"
#include "gcd/reachability.h"

namespace gcd {

/*! \brief Nonnegative weight per counter name; at least one must be positive. */
struct ProxyWeights {
  std::vector<std::pair<std::string, double>> weights;

  static ProxyWeights UnitOn(const std::string& counter_name) { return {{{counter_name, 1.0}}}; }

  /*! \brief Parse "name=weight,name=weight". */
  static ProxyWeights Parse(const std::string& text);
};

/*! \brief Inner product of weights with each step's counter delta. */
std::vector<double> Proxy(const std::vector<CounterVector>& per_step_deltas,
                          const ProxyWeights& weights);

struct FitResult {
  double a = 0;                // proxy coefficient, constrained nonnegative
  double b = 0;                // intercept, constrained nonnegative
  double r_squared = 0;
  double max_rel_error = 0;
  size_t samples = 0;
};

/*!
 * \brief Nonnegative least squares for T ~ a * S + b.
 * \throws Error on a degenerate design (fewer than 8 samples or fewer than 4
 *         distinct proxy values).
 */
FitResult FitAffine(const std::vector<double>& proxy, const std::vector<double>& time_ns);

/*! \brief Least-squares slope of log(y) against log(x); x, y > 0 required. */
double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y);

/*! \brief Synthetic per-step model time: "const:X" or "linear:c0,c1". */
struct SyntheticTimeModel {
  double c0 = 0;
  double c1 = 0;
  double At(uint32_t t) const { return c0 + c1 * t; }
  static SyntheticTimeModel Parse(const std::string& spec);
};

struct EnvelopeConfig {
  uint64_t vocab_size = 0;
  uint32_t beam_width = 1;
  double t_sync_ns = 0;
  double t_sel_ns = 0;
  double scan_cost_ns = 1.0;  // per mask slot scanned during selection
  SyntheticTimeModel t_nn;    // synthetic model-side time per step
};

struct LatencyEnvelope {
  struct StepRow {
    uint32_t t;
    double t_nn_ns;
    double t_mask_ns;     // measured or predicted via the affine model
    double t_step_ns;     // max(t_nn, t_mask) + t_sync + t_sel
    double dense_ns;      // per-step total, dense vocabulary scan, all hypotheses
    double sparse_ns;     // per-step total with the admissible-count scan
  };
  std::vector<StepRow> steps;
  double dense_total_ns = 0;
  double sparse_total_ns = 0;
  /*! \brief First step where the mask side dominates the model side; -1 if never. */
  int64_t crossover_step = -1;
};

/*!
 * \brief Combine a mask-time series (measured, or predicted as a*S_t+b) with
 *        the synthetic model time. The dense path charges a V-slot scan per
 *        hypothesis per step, the sparse path charges K_t slots instead, and
 *        totals scale with the beam width.
 */
LatencyEnvelope Envelope(const std::vector<double>& mask_time_ns,
                         const std::vector<double>& admissible_counts,
                         const EnvelopeConfig& cfg);

/*!
 * \brief Engine variant that keeps a liveness bitset over all control states
 *        and rescans the whole bitset universe once per step, so the
 *        slots-scanned counter advances by exactly kappa(G) per step.
 */
class BitsetScanEngine {
 public:
  explicit BitsetScanEngine(std::shared_ptr<const Npda> pda, CounterVector* counters);

  /*! \brief Step a terminal; returns liveness. Also rescans the universe. */
  bool StepTerminal(uint32_t terminal);

  const EngineState& State() const { return state_; }
  uint64_t LiveControlStates() const { return live_states_; }

 private:
  void Rescan();

  EngineState state_;
  CounterVector* counters_;
  std::vector<uint64_t> bitset_;
  uint64_t live_states_ = 0;
};

/*! \brief One trace record per decoding or measurement step. The
 *         live-configuration representation size is reported as both node and
 *         edge counts, since either is a defensible measure of M_t. */
struct TraceRecord {
  uint32_t t;
  CounterVector counters;  // cumulative
  uint64_t t_update_ns = 0;
  uint64_t t_mask_ns = 0;
  uint32_t admissible_count = 0;
  uint64_t m_nodes = 0;
  uint64_t m_edges = 0;
};

void WriteTraceJsonl(std::ostream& os, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> ReadTraceJsonl(std::istream& is);

}  // namespace gcd

#endif  // GCD_PERF_H_
