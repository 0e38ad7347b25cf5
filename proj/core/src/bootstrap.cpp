#include "selbias/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "selbias/error.hpp"
#include "selbias/estimators.hpp"
#include "selbias/parallel.hpp"

namespace selbias {

namespace {

struct NormalFit {
  double mean;
  double sd;
};

// Draws n values with replacement from `source` into `out`. The leaf
// evaluation below consumes the stream identically, so a leaf mean equals the
// mean of the materialized resample bit for bit.
inline void nb_draw(const double* source, std::uint32_t n, rng::RngStream& stream, double* out) {
  for (std::uint32_t t = 0; t < n; ++t) out[t] = source[stream.next_below(n)];
}

inline double nb_leaf_mean(const double* source, std::uint32_t n, rng::RngStream& stream) {
  double sum = 0.0;
  for (std::uint32_t t = 0; t < n; ++t) sum += source[stream.next_below(n)];
  return sum / static_cast<double>(n);
}

inline void pb_draw(const NormalFit& fit, std::uint32_t n, rng::RngStream& stream, double* out) {
  for (std::uint32_t t = 0; t < n; ++t) out[t] = fit.mean + fit.sd * stream.next_normal();
}

inline double mean_of(const double* x, std::uint32_t n) {
  double sum = 0.0;
  for (std::uint32_t t = 0; t < n; ++t) sum += x[t];
  return sum / static_cast<double>(n);
}

inline NormalFit fit_normal(const double* x, std::uint32_t n) {
  const double m = mean_of(x, n);
  double ss = 0.0;
  for (std::uint32_t t = 0; t < n; ++t) ss += (x[t] - m) * (x[t] - m);
  return {m, std::sqrt(ss / static_cast<double>(n - 1))};
}

struct Layout {
  std::vector<std::uint32_t> sizes;
  std::vector<std::size_t> offsets;  // size I + 1
  std::size_t total = 0;
};

Layout make_layout(const Dataset& data) {
  Layout layout;
  layout.offsets.push_back(0);
  for (std::size_t g = 0; g < data.group_count(); ++g) {
    const auto n = static_cast<std::uint32_t>(data.group_size(g));
    layout.sizes.push_back(n);
    layout.total += n;
    layout.offsets.push_back(layout.total);
  }
  return layout;
}

// Recursive order-k evaluation. out[j] receives theta^(j) at the node for
// j = 0..k; at the root, biases[j-1] receives the order-j bias estimate.
class Engine {
 public:
  Engine(const Layout& layout, SamplerKind kind, std::uint32_t B, int order)
      : layout_(layout), kind_(kind), B_(B), order_(order) {}

  struct Scratch {
    std::vector<std::vector<double>> values;     // materialized resample per depth
    std::vector<std::vector<NormalFit>> fits;    // parametric fits per depth
    std::vector<std::vector<double>> per_child;  // B x k child orders per depth
  };

  Scratch make_scratch() const {
    Scratch s;
    const auto depths = static_cast<std::size_t>(order_) + 1;
    s.values.assign(depths, std::vector<double>(layout_.total));
    s.fits.assign(depths, std::vector<NormalFit>(layout_.sizes.size()));
    s.per_child.resize(depths);
    for (std::size_t d = 0; d < depths; ++d) {
      const auto k = static_cast<std::size_t>(order_) - std::min<std::size_t>(d, order_);
      s.per_child[d].assign(static_cast<std::size_t>(B_) * k, 0.0);
    }
    return s;
  }

  // Orders 0..k-1 of child b of a node, written to child_out (k entries).
  void eval_child(int depth, int k, const rng::StreamPath& child_path, Scratch& s,
                  double* child_out) const {
    const std::size_t groups = layout_.sizes.size();
    const auto d = static_cast<std::size_t>(depth);
    if (k == 1) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < groups; ++g) {
        rng::RngStream stream(child_path, static_cast<std::uint32_t>(g));
        const std::uint32_t n = layout_.sizes[g];
        double m;
        if (kind_ == SamplerKind::Nonparametric) {
          m = nb_leaf_mean(s.values[d].data() + layout_.offsets[g], n, stream);
        } else {
          const auto& fit = s.fits[d][g];
          m = fit.mean + (fit.sd / std::sqrt(static_cast<double>(n))) * stream.next_normal();
        }
        best = std::max(best, m);
      }
      child_out[0] = best;
      return;
    }
    auto& next = s.values[d + 1];
    for (std::size_t g = 0; g < groups; ++g) {
      rng::RngStream stream(child_path, static_cast<std::uint32_t>(g));
      const std::uint32_t n = layout_.sizes[g];
      double* dst = next.data() + layout_.offsets[g];
      if (kind_ == SamplerKind::Nonparametric) {
        nb_draw(s.values[d].data() + layout_.offsets[g], n, stream, dst);
      } else {
        pb_draw(s.fits[d][g], n, stream, dst);
        s.fits[d + 1][g] = fit_normal(dst, n);
      }
    }
    eval_node(depth + 1, k - 1, child_path, s, child_out, nullptr, 0, B_);
  }

  // The node's own data is s.values[depth] (nonparametric) or s.fits[depth]
  // (parametric). When `biases` is set only children [begin, end) are
  // evaluated and combination is left to the caller.
  void eval_node(int depth, int k, const rng::StreamPath& path, Scratch& s, double* out,
                 double* biases, std::uint32_t begin, std::uint32_t end) const {
    const auto d = static_cast<std::size_t>(depth);
    out[0] = node_theta(s, d);
    if (k == 0) return;
    auto& per_child = s.per_child[d];
    for (std::uint32_t b = begin; b < end; ++b) {
      eval_child(depth, k, path.child(b), s,
                 per_child.data() + static_cast<std::size_t>(b) * static_cast<std::size_t>(k));
    }
    if (depth == 0 && (begin != 0 || end != B_)) return;
    combine(per_child.data(), k, out, biases);
  }

  // theta^(j) = theta^(j-1) - mean_b [child^(j-1)_b - theta^(j-1)].
  void combine(const double* per_child, int k, double* out, double* biases) const {
    for (int j = 1; j <= k; ++j) {
      double deviation = 0.0;
      for (std::uint32_t b = 0; b < B_; ++b) {
        deviation += per_child[static_cast<std::size_t>(b) * static_cast<std::size_t>(k) +
                               static_cast<std::size_t>(j - 1)] -
                     out[j - 1];
      }
      const double bias = deviation / static_cast<double>(B_);
      out[j] = out[j - 1] - bias;
      if (biases) biases[j - 1] = bias;
    }
  }

  double node_theta(const Scratch& s, std::size_t d) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < layout_.sizes.size(); ++g) {
      const double m = kind_ == SamplerKind::Nonparametric
                           ? mean_of(s.values[d].data() + layout_.offsets[g], layout_.sizes[g])
                           : s.fits[d][g].mean;
      best = std::max(best, m);
    }
    return best;
  }

 private:
  const Layout& layout_;
  SamplerKind kind_;
  std::uint32_t B_;
  int order_;
};

const char* sampler_label(SamplerKind kind) {
  return kind == SamplerKind::ParametricNormal ? "parametric bootstrap" : "nonparametric bootstrap";
}

}  // namespace

void check_bootstrap_preconditions(const Dataset& data, int order, SamplerKind kind) {
  if (order < 1 || order > kMaxBootstrapOrder) {
    throw ValidationError("bootstrap order must be 1, 2 or 3 (got " + std::to_string(order) + ")");
  }
  if (data.group_count() >= (1u << 24)) throw ValidationError("too many groups");
  if (kind == SamplerKind::Nonparametric) {
    if (!data.is_subject_level()) {
      throw PreconditionError(
          "NB requires subject-level data; use a parametric method such as --method pb1");
    }
    return;
  }
  const bool needs_sd = data.is_subject_level() || order >= 2;
  if (!needs_sd) return;
  for (std::size_t g = 0; g < data.group_count(); ++g) {
    if (data.group_size(g) < 2) {
      throw PreconditionError(std::string(sampler_label(kind)) + " needs n >= 2 in group " +
                              data.label(g) +
                              (data.is_subject_level() ? " to fit its sd"
                                                       : " to refit sd at inner levels; use pb1"));
    }
  }
}

Dataset resample(const Dataset& data, SamplerKind kind, const rng::StreamPath& path) {
  if (kind == SamplerKind::Nonparametric && !data.is_subject_level()) {
    throw PreconditionError(
        "NB requires subject-level data; use a parametric method such as --method pb1");
  }
  Dataset::Subjects out;
  out.reserve(data.group_count());
  for (std::size_t g = 0; g < data.group_count(); ++g) {
    rng::RngStream stream(path, static_cast<std::uint32_t>(g));
    const auto n = static_cast<std::uint32_t>(data.group_size(g));
    GroupObservations group{data.label(g), std::vector<double>(n)};
    if (kind == SamplerKind::Nonparametric) {
      nb_draw(data.subjects()[g].values.data(), n, stream, group.values.data());
    } else {
      NormalFit fit{};
      if (data.is_subject_level()) {
        const auto& obs = data.subjects()[g];
        if (n < 2) {
          throw PreconditionError("parametric bootstrap needs n >= 2 in group " + obs.label +
                                  " to fit its sd");
        }
        fit = {group_mean(obs), std::sqrt(group_variance(obs))};
      } else {
        fit = {data.summaries()[g].mean, data.summaries()[g].sd};
      }
      pb_draw(fit, n, stream, group.values.data());
    }
    out.push_back(std::move(group));
  }
  return Dataset::subject_level(std::move(out));
}

Estimate corrected_estimate(const Dataset& data, const BootstrapOptions& options,
                            const rng::StreamPath& root) {
  check_bootstrap_preconditions(data, options.order, options.sampler);
  if (options.B < 1) throw ValidationError("B must be >= 1");
  if (options.order >= 2 && options.B > rng::StreamPath::kMaxNestedIndex + 1) {
    throw ValidationError("B must be <= 65535 for double or triple bootstrap");
  }
  if (root.depth() + options.order > rng::StreamPath::kMaxDepth) {
    throw ValidationError("stream path too deep for the requested order");
  }

  const Layout layout = make_layout(data);
  const Engine engine(layout, options.sampler, options.B, options.order);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, options.B));

  std::vector<Engine::Scratch> scratch;
  scratch.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    auto s = engine.make_scratch();
    if (options.sampler == SamplerKind::Nonparametric) {
      for (std::size_t g = 0; g < data.group_count(); ++g) {
        const auto& v = data.subjects()[g].values;
        std::copy(v.begin(), v.end(), s.values[0].begin() + static_cast<long>(layout.offsets[g]));
      }
    } else {
      for (std::size_t g = 0; g < data.group_count(); ++g) {
        if (data.is_subject_level()) {
          const auto& obs = data.subjects()[g];
          s.fits[0][g] = {group_mean(obs), std::sqrt(group_variance(obs))};
        } else {
          s.fits[0][g] = {data.summaries()[g].mean, data.summaries()[g].sd};
        }
      }
    }
    scratch.push_back(std::move(s));
  }

  const auto k = static_cast<std::size_t>(options.order);
  std::vector<double> out(k + 1);
  std::vector<double> biases(k);
  if (workers == 1) {
    engine.eval_node(0, options.order, root, scratch[0], out.data(), biases.data(), 0, options.B);
  } else {
    parallel_chunks(options.B, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
      std::vector<double> local(k + 1);
      engine.eval_node(0, options.order, root, scratch[w], local.data(), nullptr,
                       static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end));
    });
    // Gather the per-child orders written by each worker in index order.
    std::vector<double> per_child(static_cast<std::size_t>(options.B) * k);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::size_t{options.B} * w / workers;
      const std::size_t end = std::size_t{options.B} * (w + 1) / workers;
      std::copy(scratch[w].per_child[0].begin() + static_cast<long>(begin * k),
                scratch[w].per_child[0].begin() + static_cast<long>(end * k),
                per_child.begin() + static_cast<long>(begin * k));
    }
    out[0] = engine.node_theta(scratch[0], 0);
    engine.combine(per_child.data(), options.order, out.data(), biases.data());
  }

  EstimateTrace trace;
  trace.raw = out[0];
  trace.bias_estimates = biases;
  trace.selected_index = argmax_group(data);
  return Estimate{out[k], std::move(trace)};
}

}  // namespace selbias
