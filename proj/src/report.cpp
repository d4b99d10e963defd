#include "polyvol/report.hpp"

#include <cmath>
#include <sstream>

#include "polyvol/rng.hpp"

namespace polyvol {

namespace {

nlohmann::json exps_json(const ExponentVector& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < a.dim(); ++i) arr.push_back(a[i]);
  return arr;
}

void put_rational(nlohmann::json& j, const std::string& key, const Rational& v) {
  j[key] = v.str();
  j[key + "_real"] = v.to_double();
}

void put_rational_opt(nlohmann::json& j, const std::string& key,
                      const std::optional<Rational>& v) {
  if (v) {
    put_rational(j, key, *v);
  } else {
    j[key] = nullptr;
  }
}

nlohmann::json cert_json(const AdmissibleCertificate& cert) {
  nlohmann::json j;
  j["alpha"] = exps_json(cert.alpha);
  j["order"] = cert.sigma;
  return j;
}

nlohmann::json chain_index_json(const ChainIndexBound& b) {
  nlohmann::json j;
  j["l"] = b.l;
  j["alpha"] = exps_json(b.alpha);
  put_rational(j, "theta", b.theta);
  put_rational(j, "tau", b.tau);
  return j;
}

nlohmann::json integrability_json(const IntegrabilityBounds& b) {
  nlohmann::json j;
  j["dimension"] = b.dimension;
  j["ad"] = b.ad;
  j["ad_alpha"] = exps_json(b.ad_alpha);
  put_rational(j, "lower_ad", b.lower_ad);
  j["chain_bounds"] = nlohmann::json::array();
  for (const auto& c : b.chain_bounds) j["chain_bounds"].push_back(chain_index_json(c));
  j["best_chain"] = b.best_chain ? chain_index_json(*b.best_chain) : nlohmann::json(nullptr);
  put_rational(j, "nd", b.nd);
  j["gradient_vanishes"] = b.gradient_vanishes;
  put_rational_opt(j, "upper_nd", b.upper_nd);
  j["note"] = b.note;
  return j;
}

nlohmann::json level_json(const LevelCell& c) {
  nlohmann::json j;
  j["delta"] = c.delta;
  j["volume"] = c.volume;
  j["standard_error"] = c.standard_error;
  j["hit_count"] = c.hit_count;
  j["reliable"] = c.reliable;
  return j;
}

nlohmann::json cell_json(const VolumeEstimate& c) {
  nlohmann::json j;
  j["delta"] = c.delta;
  j["r"] = c.r;
  j["volume_estimate"] = c.volume_estimate;
  j["standard_error"] = c.standard_error;
  j["hit_count"] = c.hit_count;
  j["samples"] = c.samples;
  j["reliable"] = c.reliable;
  return j;
}

/// Recognizes the two-variable family x1^d + x1*x2^m + x2^p with unit
/// coefficients and d > m > p >= 1, the shape whose published analysis the
/// discrepancy notes concern.
bool detect_family(const SparsePolynomial& p, int& d, int& m, int& pp) {
  if (p.dimension() != 2 || p.term_count() != 3) return false;
  bool have_d = false, have_m = false, have_p = false;
  for (const auto& [a, c] : p.terms()) {
    if (c != Rational(1)) return false;
    if (a[1] == 0 && a[0] >= 1) {
      d = a[0];
      have_d = true;
    } else if (a[0] == 1 && a[1] >= 1) {
      m = a[1];
      have_m = true;
    } else if (a[0] == 0 && a[1] >= 1) {
      pp = a[1];
      have_p = true;
    } else {
      return false;
    }
  }
  return have_d && have_m && have_p && d > m && m > pp;
}

}  // namespace

AnalysisReport analyze(const SparsePolynomial& p) {
  if (p.is_constant()) throw std::domain_error("constant polynomial has no sublevel scaling");
  int n = p.dimension();

  AnalysisReport rep;
  rep.polynomial = p.format();
  rep.dimension = n;
  rep.degree = *p.degree();
  rep.admissible = admissible_monomials(p);
  rep.ad = admissible_degree(p);
  rep.nd = newton_distance(p);

  for (int l = 1; l <= n; ++l) {
    ChainSummary cs;
    cs.l = l;
    auto chain = jacobian_chain(p, l);
    const SparsePolynomial& tail = chain.back();
    cs.tail = tail.format();
    cs.tail_degree = tail.degree();
    cs.feasible = !tail.is_constant();
    rep.chains.push_back(cs);
  }

  rep.predictions.push_back(degree_baseline_bound(p));
  for (const auto& cert : rep.admissible)
    rep.predictions.push_back(admissible_tube_bound(p, cert));
  for (const auto& cs : rep.chains) {
    if (!cs.feasible) continue;
    try {
      rep.predictions.push_back(chain_volume_bound(p, cs.l));
    } catch (const std::domain_error&) {
      // tail nonconstant but without an admissible monomial; no exponents
    }
  }
  rep.oscillatory = oscillatory_decay_bound(p);
  rep.predictions.push_back(rep.oscillatory->bound);

  try {
    rep.integrability = integrability_bounds(p);
  } catch (const std::domain_error&) {
    rep.warnings.push_back("integral-index analysis skipped: it requires the polynomial to vanish at the origin");
  }

  int d = 0, m = 0, pp = 0;
  if (detect_family(p, d, m, pp)) {
    {
      SparsePolynomial tail = jacobian_chain(p, 2).back();
      std::ostringstream t;
      t << "a published treatment of this family prints the third chain entry without the term "
        << m << "*x2^" << (2 * m - 1) << "; direct cofactor expansion gives " << tail.format()
        << ", cross-checked here against an independent differentiation oracle";
      rep.notes.push_back({"third chain entry", t.str()});
    }
    {
      Rational closed(static_cast<long>(d) * m, static_cast<long>(d) + m + 1);
      std::ostringstream t;
      t << "a published closed form reports the hull distance of this family as d*m/(d+m+1) = "
        << closed.str() << ", while the certified linear program gives " << rep.nd.value.str()
        << "; the same treatment once prints the support corner x2^" << pp << " as x2^" << d
        << ", and its chain monomial x1^" << (d - 1) << "*x2^" << (m - 1)
        << " would give tau = 2/(d+m) = " << Rational(2, d + m).str();
      rep.notes.push_back({"hull distance formula", t.str()});
    }
  }

  {
    std::vector<double> x(n);
    bool pos = false, neg = false;
    for (uint32_t k = 0; k < 1024; ++k) {
      rng::Stream st(0, rng::kStreamProbe, 0, k);
      for (int i = 0; i < n; ++i) x[i] = st.next_symmetric(2.0);
      double v = p.evaluate(x);
      if (v > 0.0) pos = true;
      if (v < 0.0) neg = true;
    }
    if (!(pos && neg))
      rep.warnings.push_back(
          "no sign change across 1024 probe points: the zero set is likely thinner than a "
          "hypersurface, so in this degenerate case the volume bounds are coarse");
  }
  return rep;
}

nlohmann::json to_json(const BoundPrediction& prediction) {
  nlohmann::json j;
  switch (prediction.kind) {
    case BoundPrediction::Kind::volume: j["kind"] = "volume"; break;
    case BoundPrediction::Kind::integrability: j["kind"] = "integrability"; break;
    case BoundPrediction::Kind::oscillatory: j["kind"] = "oscillatory"; break;
  }
  j["source"] = prediction.source;
  j["dimension"] = prediction.dimension;
  put_rational(j, "delta_exponent", prediction.delta_exponent);
  put_rational_opt(j, "secondary_delta_exponent", prediction.secondary_delta_exponent);
  put_rational(j, "r_exponent", prediction.r_exponent);
  put_rational_opt(j, "lambda_exponent", prediction.lambda_exponent);
  j["known_factor"] = prediction.known_factor;
  j["constant_fitted"] = prediction.constant_fitted;
  j["constraint_m"] = prediction.constraint_m;
  put_rational_opt(j, "constraint_delta_power", prediction.constraint_delta_power);
  j["validity"] = prediction.constraint_text;
  put_rational_opt(j, "theta", prediction.theta);
  put_rational_opt(j, "tau", prediction.tau);
  j["alpha"] = prediction.alpha ? exps_json(*prediction.alpha) : nlohmann::json(nullptr);
  j["chain_length"] =
      prediction.chain_length ? nlohmann::json(*prediction.chain_length) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const AnalysisReport& report) {
  nlohmann::json j;
  j["polynomial"] = report.polynomial;
  j["dimension"] = report.dimension;
  j["degree"] = report.degree;
  j["admissible"] = nlohmann::json::array();
  for (const auto& cert : report.admissible) j["admissible"].push_back(cert_json(cert));
  {
    nlohmann::json a;
    a["value"] = report.ad.value;
    a["argmin"] = cert_json(report.ad.argmin);
    j["admissible_degree"] = a;
  }
  {
    nlohmann::json nd;
    put_rational(nd, "value", report.nd.value);
    nd["weights"] = nlohmann::json::array();
    for (const auto& [vertex, w] : report.nd.weights) {
      nlohmann::json e;
      e["vertex"] = exps_json(vertex);
      put_rational(e, "weight", w);
      nd["weights"].push_back(e);
    }
    nd["combination"] = nlohmann::json::array();
    for (const auto& c : report.nd.combination) nd["combination"].push_back(c.str());
    nd["degenerate"] = report.nd.degenerate;
    j["newton_distance"] = nd;
  }
  j["chains"] = nlohmann::json::array();
  for (const auto& cs : report.chains) {
    nlohmann::json c;
    c["l"] = cs.l;
    c["tail"] = cs.tail;
    c["tail_degree"] = cs.tail_degree ? nlohmann::json(*cs.tail_degree) : nlohmann::json(nullptr);
    c["feasible"] = cs.feasible;
    j["chains"].push_back(c);
  }
  j["predictions"] = nlohmann::json::array();
  for (const auto& pr : report.predictions) j["predictions"].push_back(to_json(pr));
  j["integrability"] =
      report.integrability ? integrability_json(*report.integrability) : nlohmann::json(nullptr);
  if (report.oscillatory) {
    nlohmann::json o;
    o["bound"] = to_json(report.oscillatory->bound);
    put_rational(o, "baseline_lambda_exponent", report.oscillatory->baseline_lambda_exponent);
    o["ad"] = report.oscillatory->ad;
    o["degree"] = report.oscillatory->degree;
    j["oscillatory"] = o;
  } else {
    j["oscillatory"] = nullptr;
  }
  j["notes"] = nlohmann::json::array();
  for (const auto& note : report.notes) {
    nlohmann::json e;
    e["label"] = "literature-note";
    e["topic"] = note.topic;
    e["text"] = note.text;
    j["notes"].push_back(e);
  }
  j["warnings"] = report.warnings;
  j["version"] = report.version;
  return j;
}

nlohmann::json to_json(const ScanFit& fit) {
  nlohmann::json j;
  j["axis"] = fit.axis;
  j["exponent"] = fit.exponent;
  j["exponent_se"] = fit.exponent_se;
  j["ci_lo"] = fit.ci_lo;
  j["ci_hi"] = fit.ci_hi;
  j["constant"] = fit.constant;
  j["points"] = fit.points;
  return j;
}

nlohmann::json to_json(const ScanResult& result) {
  nlohmann::json j;
  nlohmann::json cfg;
  cfg["delta_grid"] = result.config.delta_grid;
  cfg["r_grid"] = result.config.r_grid;
  cfg["samples_per_cell"] = result.config.samples_per_cell;
  cfg["seed"] = result.config.seed;
  j["config"] = cfg;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : result.cells) j["cells"].push_back(cell_json(c));
  j["fitted"] = result.fitted ? to_json(*result.fitted) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const TightnessReport& report) {
  nlohmann::json j;
  j["fitted_constant"] = report.fitted_constant;
  j["constant_cell"] = cell_json(report.constant_cell);
  j["delta_fit"] = report.delta_fit ? to_json(*report.delta_fit) : nlohmann::json(nullptr);
  j["violations"] = report.violations;
  j["comparison"] = report.comparison;
  return j;
}

nlohmann::json to_json(const RemezReport& report) {
  nlohmann::json j;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["factor"] = report.factor;
  j["degree"] = report.degree;
  j["satisfied"] = report.satisfied;
  return j;
}

nlohmann::json to_json(const DegenerateScanReport& report) {
  nlohmann::json j;
  j["scan"] = to_json(report.scan);
  j["delta_fit"] = report.delta_fit ? to_json(*report.delta_fit) : nlohmann::json(nullptr);
  j["comparison_delta"] =
      report.comparison_delta ? nlohmann::json(*report.comparison_delta) : nlohmann::json(nullptr);
  j["r_slope"] = report.r_slope ? nlohmann::json(*report.r_slope) : nlohmann::json(nullptr);
  j["r_independent"] = report.r_independent;
  j["r_cells_agree"] =
      report.r_cells_agree ? nlohmann::json(*report.r_cells_agree) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const DecayScanResult& result) {
  nlohmann::json j;
  j["lambda_grid"] = result.lambda_grid;
  j["magnitudes"] = result.magnitudes;
  j["values"] = nlohmann::json::array();
  for (const auto& v : result.values) j["values"].push_back({v.real(), v.imag()});
  nlohmann::json conv = nlohmann::json::array();
  for (bool b : result.converged) conv.push_back(b);
  j["converged"] = conv;
  j["envelope_lambda"] = result.envelope_lambda;
  j["envelope_magnitude"] = result.envelope_magnitude;
  j["envelope_exponent"] = result.envelope_exponent;
  j["exponent_se"] = result.exponent_se;
  j["ci_lo"] = result.ci_lo;
  j["ci_hi"] = result.ci_hi;
  return j;
}

nlohmann::json to_json(const SingularIntegralResult& result) {
  nlohmann::json j;
  j["mu"] = result.mu;
  j["r"] = result.r;
  j["value"] = result.value ? nlohmann::json(*result.value) : nlohmann::json(nullptr);
  j["divergent"] = result.divergent;
  j["levels_used"] = result.levels_used;
  j["tail_exponent"] = result.tail_exponent;
  j["tail_exponent_se"] = result.tail_exponent_se;
  j["verdict_basis"] = result.verdict_basis;
  j["levels"] = nlohmann::json::array();
  for (const auto& c : result.levels) j["levels"].push_back(level_json(c));
  return j;
}

nlohmann::json to_json(const IntegrabilityScan& scan) {
  nlohmann::json j;
  j["bounds"] = integrability_json(scan.bounds);
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : scan.verdicts) {
    nlohmann::json e;
    e["mu"] = v.mu;
    e["divergent"] = v.divergent;
    e["value"] = v.value ? nlohmann::json(*v.value) : nlohmann::json(nullptr);
    e["tail_exponent"] = v.tail_exponent;
    e["tail_exponent_se"] = v.tail_exponent_se;
    e["r_growth"] = v.r_growth ? nlohmann::json(*v.r_growth) : nlohmann::json(nullptr);
    j["verdicts"].push_back(e);
  }
  j["largest_finite_mu"] =
      scan.largest_finite_mu ? nlohmann::json(*scan.largest_finite_mu) : nlohmann::json(nullptr);
  j["smallest_divergent_mu"] = scan.smallest_divergent_mu
                                   ? nlohmann::json(*scan.smallest_divergent_mu)
                                   : nlohmann::json(nullptr);
  j["theoretical_lower"] = scan.theoretical_lower;
  j["theoretical_upper"] =
      scan.theoretical_upper ? nlohmann::json(*scan.theoretical_upper) : nlohmann::json(nullptr);
  j["flags"] = scan.flags;
  return j;
}

nlohmann::json to_json(const LojaReport& report) {
  nlohmann::json j;
  j["samples"] = report.samples;
  j["confirmed"] = report.confirmed;
  j["inconclusive"] = report.inconclusive;
  j["max_confirmed_ratio"] = report.max_confirmed_ratio;
  j["mu_alpha"] = report.mu_alpha;
  return j;
}

nlohmann::json to_json(const ChebyshevFloorResult& result) {
  nlohmann::json j;
  j["min_product"] = result.min_product;
  j["worst_coefficients"] = result.worst_coefficients;
  return j;
}

std::string render_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "polynomial: " << report.polynomial << "\n";
  out << "dimension " << report.dimension << ", degree " << report.degree << "\n";
  out << "admissible monomials (" << report.admissible.size() << "):\n";
  for (const auto& cert : report.admissible) {
    out << "  " << cert.alpha.str() << "  order";
    for (int v : cert.sigma) out << " x" << v;
    out << "\n";
  }
  out << "admissible degree " << report.ad.value << " at " << report.ad.argmin.alpha.str() << "\n";
  out << "hull distance " << report.nd.value.str() << " (" << report.nd.value.to_double() << ")\n";
  for (const auto& cs : report.chains) {
    out << "chain l=" << cs.l << ": tail " << cs.tail << " ("
        << (cs.feasible ? "feasible" : "not feasible") << ")\n";
  }
  out << "predicted bounds:\n";
  for (const auto& pr : report.predictions) {
    out << "  [" << pr.source << "] ";
    if (pr.kind == BoundPrediction::Kind::oscillatory) {
      out << "|I_r(lambda)| <= C * r^" << pr.r_exponent.str() << " * |lambda|^"
          << pr.lambda_exponent->str();
    } else {
      out << "vol <= C * " << pr.known_factor << " * delta^" << pr.delta_exponent.str() << " * r^"
          << pr.r_exponent.str();
      if (pr.secondary_delta_exponent)
        out << " + (" << pr.known_factor << " * delta^" << pr.delta_exponent.str() << ")^"
            << report.dimension;
    }
    if (!pr.constraint_text.empty()) out << "  [valid " << pr.constraint_text << "]";
    out << "\n";
  }
  if (report.integrability) {
    out << "integral index: at least " << report.integrability->lower_ad.str();
    if (report.integrability->best_chain)
      out << " and at least " << report.integrability->best_chain->tau.str();
    if (report.integrability->upper_nd)
      out << ", at most " << report.integrability->upper_nd->str();
    out << "\n";
  }
  for (const auto& note : report.notes)
    out << "literature-note [" << note.topic << "]: " << note.text << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  out << "version " << report.version << "\n";
  return out.str();
}

}  // namespace polyvol
