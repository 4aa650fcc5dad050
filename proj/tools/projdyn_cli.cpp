// Command-line front end: analyze / green / classify / compare / probe /
// corpus subcommands over the library. Outputs are deterministic: a fixed
// configuration yields byte-identical reports and images regardless of the
// worker count.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "projdyn/corpus.hpp"
#include "projdyn/error.hpp"
#include "projdyn/fatou.hpp"
#include "projdyn/green.hpp"
#include "projdyn/parser.hpp"
#include "projdyn/report.hpp"

using namespace projdyn;
using ordered_json = nlohmann::ordered_json;

namespace {

cplx parse_complex(const std::string& s) {
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty complex literal");
  if (s.back() == 'i') {
    size_t split = s.find_last_of("+-");
    if (split == std::string::npos || split == 0) {
      std::string im = s.substr(0, s.size() - 1);
      if (im.empty() || im == "+" || im == "-") im += "1";
      return cplx(0.0, std::stod(im));
    }
    std::string im = s.substr(split, s.size() - split - 1);
    if (im == "+" || im == "-") im += "1";
    return cplx(std::stod(s.substr(0, split)), std::stod(im));
  }
  return cplx(std::stod(s), 0.0);
}

Vec3c parse_triple(const std::string& s) {
  std::array<std::string, 3> parts;
  size_t a = s.find(','), b = s.rfind(',');
  if (a == std::string::npos || b == a)
    throw Error(Errc::InvalidArgument, "expected a,b,c complex triple: " + s);
  return {parse_complex(s.substr(0, a)), parse_complex(s.substr(a + 1, b - a - 1)),
          parse_complex(s.substr(b + 1))};
}

struct SliceOpts {
  std::string kind = "chart";
  std::string chart = "z";
  std::string base, dir, dir2;
  std::string window = "-2,2,-2,2";
  std::string res = "128";
  int max_res = 1024;
};

Slice build_slice(const SliceOpts& o) {
  double w[4];
  {
    std::istringstream in(o.window);
    std::string tok;
    for (double& x : w) {
      if (!std::getline(in, tok, ','))
        throw Error(Errc::InvalidArgument, "window needs s0,s1,t0,t1");
      x = std::stod(tok);
    }
  }
  int rw, rh;
  {
    size_t xpos = o.res.find('x');
    if (xpos == std::string::npos) rw = rh = std::stoi(o.res);
    else {
      rw = std::stoi(o.res.substr(0, xpos));
      rh = std::stoi(o.res.substr(xpos + 1));
    }
  }
  if (rw > o.max_res || rh > o.max_res)
    throw Error(Errc::InvalidArgument,
                "resolution exceeds --max-res (" + std::to_string(o.max_res) + ")");
  if (o.kind == "chart") {
    int chart = o.chart == "x" ? 0 : o.chart == "y" ? 1 : 2;
    return Slice::chart_plane(chart, w[0], w[1], w[2], w[3], rw, rh);
  }
  if (o.kind == "line") {
    if (o.base.empty() || o.dir.empty())
      throw Error(Errc::InvalidArgument, "line slices need --base and --dir");
    return Slice::complex_line(parse_triple(o.base), parse_triple(o.dir), w[0],
                               w[1], w[2], w[3], rw, rh);
  }
  if (o.kind == "plane") {
    if (o.base.empty() || o.dir.empty() || o.dir2.empty())
      throw Error(Errc::InvalidArgument,
                  "plane slices need --base, --dir and --dir2");
    return Slice::affine_plane(parse_triple(o.base), parse_triple(o.dir),
                               parse_triple(o.dir2), w[0], w[1], w[2], w[3],
                               rw, rh);
  }
  throw Error(Errc::InvalidArgument, "unknown slice kind: " + o.kind);
}

RationalMap load_map(const std::string& expr, const std::string& corpus) {
  if (!expr.empty() && !corpus.empty())
    throw Error(Errc::InvalidArgument, "--map and --corpus are exclusive");
  if (!expr.empty()) return parse_map(expr);
  if (!corpus.empty()) return corpus_map(corpus);
  throw Error(Errc::InvalidArgument, "one of --map or --corpus is required");
}

void ensure_outdir(const std::string& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw Error(Errc::IoError, "cannot create output directory: " + out);
}

// Simple key=value configuration; per the interface contract the file
// overrides command-line flags.
void apply_config(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read config file: " + path);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError,
                  "config line " + std::to_string(ln) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (!opt)
      throw Error(Errc::ParseError,
                  "config line " + std::to_string(ln) + ": unknown key " + key);
    opt->clear();
    opt->add_result(value);
    opt->run_callback();
  }
}

std::string stability_text(const DegreeReport& rep) {
  if (!rep.algebraically_stable) return "unstable";
  return "stable-up-to-" + std::to_string(rep.degrees.size());
}

void add_ind_lines(Report& rep, const std::vector<IndPoint>& ind) {
  rep.kv("indeterminacy_count", static_cast<long long>(ind.size()));
  for (size_t k = 0; k < ind.size(); ++k) {
    std::string key = "ind." + std::to_string(k);
    rep.kv(key, ind[k].point.str() + " residual=" + fmt_double(ind[k].residual) +
                    " exact=" + (ind[k].exact ? "yes" : "no") +
                    (ind[k].widened ? " widened=yes" : ""));
  }
}

int cmd_analyze(const RationalMap& f, int depth, const std::string& out) {
  ensure_outdir(out);
  Report rep("projdyn-report v1");
  rep.kv("command", "analyze");
  rep.kv("map", f.str());
  rep.kv("degree", f.degree());
  rep.kv("dominant", f.dominant());
  rep.kv("reduced_at_parse", f.was_reduced());
  if (f.was_reduced()) rep.kv("cancelled_factor", f.reduction_cofactor().str());
  DegreeReport deg = as_test(f, depth);
  std::string seq;
  for (size_t k = 0; k < deg.degrees.size(); ++k)
    seq += (k ? " " : "") + std::to_string(deg.degrees[k]);
  rep.kv("requested_depth", depth);
  rep.kv("degrees", seq);
  rep.kv("as_verdict", stability_text(deg));
  if (!deg.algebraically_stable) rep.kv("as_witness", deg.witness);
  rep.kv("budget_exceeded", deg.budget_exceeded);
  if (!f.dominant())
    rep.kv("indeterminacy_advisory",
           "map is not dominant; locus results are advisory");
  add_ind_lines(rep, f.indeterminacy());
  // Reduced iterates in canonical text, as far as the budget allowed.
  std::array<HPoly, 3> cur = f.lift();
  rep.kv("iterate.1", f.str());
  for (size_t n = 2; n <= deg.degrees.size(); ++n) {
    std::array<HPoly, 3> next;
    for (int i = 0; i < 3; ++i) next[i] = hp_compose(f.lift()[i], cur);
    auto [red, g] = reduce_lift(next);
    cur = red;
    std::string key = "iterate." + std::to_string(n);
    rep.kv(key, "[" + cur[0].str() + " : " + cur[1].str() + " : " +
                    cur[2].str() + "]");
    if (g.degree() > 0) rep.kv(key + ".cancelled", g.str());
  }
  rep.write(out + "/analyze.txt");
  std::cout << rep.str();
  return 0;
}

int cmd_green(const RationalMap& f, const Slice& s, int depth, double tau,
              double eps, int workers, const std::string& out) {
  ensure_outdir(out);
  GreenField g = v_field(f, s, depth, workers, eps);
  SuppMask m = laplacian_mask(g, tau);
  long long ok = 0, dead = 0, masked = 0;
  double vmin = 1e300, vmax = -1e300;
  for (size_t k = 0; k < g.v.size(); ++k) {
    if (g.status[k] == PixelStatus::OK) {
      ++ok;
      vmin = std::min(vmin, g.v[k]);
      vmax = std::max(vmax, g.v[k]);
    } else ++dead;
    masked += m.mask[k];
  }
  Report rep("projdyn-report v1");
  rep.kv("command", "green");
  rep.kv("map", f.str());
  rep.kv("slice", s.str());
  rep.kv("depth", depth);
  rep.kv("eps_ind", eps);
  rep.kv("tau", m.tau);
  rep.kv("tau_mode", tau <= 0 ? "auto" : "explicit");
  rep.kv("pixels_ok", ok);
  rep.kv("pixels_dead", dead);
  rep.kv("mask_true", masked);
  rep.kv("v_min", ok ? vmin : 0.0);
  rep.kv("v_max", ok ? vmax : 0.0);
  rep.kv("files", "v.grid v.pgm mask.grid mask.pgm");
  rep.write(out + "/green.txt");
  write_green_grid(out + "/v.grid", g);
  write_pgm(out + "/v.pgm", s.width, s.height, g.v);
  write_mask_grid(out + "/mask.grid", m);
  write_pgm_mask(out + "/mask.pgm", m);
  std::cout << rep.str();
  return 0;
}

ClassifierParams build_params(int depth, int ring, double r0, double r0_scale,
                              double dstab, double stab_scale, double dblow,
                              double eps) {
  ClassifierParams cp;
  cp.depth = depth;
  cp.ring = ring;
  cp.r0 = r0;
  cp.r0_scale = r0_scale;
  cp.delta_stab = dstab;
  cp.stab_scale = stab_scale;
  cp.delta_blow = dblow;
  cp.eps_ind = eps;
  return cp;
}

ordered_json params_json(const ClassifierParams& cp) {
  ordered_json j;
  j["depth"] = cp.depth;
  j["ring"] = cp.ring;
  j["r0"] = cp.r0;
  j["r0_scale"] = cp.r0_scale;
  j["delta_stab"] = cp.delta_stab;
  j["stab_scale"] = cp.stab_scale;
  j["delta_blow"] = cp.delta_blow;
  j["eps_ind"] = cp.eps_ind;
  return j;
}

int cmd_classify(const RationalMap& f, const Slice& s,
                 const ClassifierParams& cp, int workers,
                 const std::string& out) {
  ensure_outdir(out);
  FatouRaster r = fatou_raster(f, s, cp, workers);
  ConnectivityReport conn = connectivity_check(r);

  Report rep("projdyn-report v1");
  rep.kv("command", "classify");
  rep.kv("map", f.str());
  rep.kv("slice", s.str());
  rep.kv("depth", cp.depth);
  rep.kv("fatou_pixels", r.counts[0]);
  rep.kv("julia_pixels", r.counts[1]);
  rep.kv("near_indeterminacy_pixels", r.counts[2]);
  rep.kv("unresolved_pixels", r.counts[3]);
  rep.kv("fatou_components", r.component_count);
  rep.kv("julia_connectivity",
         conn.has_julia ? std::to_string(conn.component_count) : "no-julia");
  rep.kv("files", "raster.ppm classify.json");
  rep.write(out + "/classify.txt");

  ordered_json j;
  j["schema"] = "projdyn-classify v1";
  j["map"] = f.str();
  j["slice"] = s.str();
  j["params"] = params_json(cp);
  j["counts"] = {{"fatou", r.counts[0]},
                 {"julia", r.counts[1]},
                 {"near_indeterminacy", r.counts[2]},
                 {"unresolved", r.counts[3]}};
  std::vector<long long> sizes(r.component_count + 1, 0);
  for (size_t k = 0; k < r.components.size(); ++k) ++sizes[r.components[k]];
  ordered_json comps = ordered_json::array();
  for (int label = 1; label <= r.component_count; ++label)
    comps.push_back({{"label", label}, {"pixels", sizes[label]}});
  j["components"] = comps;
  j["julia_components"] = conn.has_julia ? conn.component_count : 0;
  write_text_file(out + "/classify.json", j.dump(2) + "\n");

  write_ppm_raster(out + "/raster.ppm", r);
  std::cout << rep.str();
  return 0;
}

int cmd_compare(const RationalMap& f, const Slice& s,
                const ClassifierParams& cp, int green_depth, double tau,
                int workers, const std::string& out) {
  ensure_outdir(out);
  CompareReport cr = classifier_compare(f, s, cp, green_depth, tau, workers);
  Report rep("projdyn-report v1");
  rep.kv("command", "compare");
  rep.kv("map", f.str());
  rep.kv("slice", s.str());
  rep.kv("green_available", cr.green_available);
  if (cr.green_available) {
    rep.kv("tau", cr.tau);
    rep.kv("resolved", cr.resolved);
    rep.kv("both_fatou", cr.both_fatou);
    rep.kv("both_julia", cr.both_julia);
    rep.kv("equicontinuity_fatou_green_julia", cr.eq_fatou_only);
    rep.kv("equicontinuity_julia_green_fatou", cr.eq_julia_only);
    rep.kv("agreement",
           cr.agreement_defined ? fmt_double(cr.agreement) : "undefined");
    std::string dis;
    for (auto& [i, j] : cr.disagreements)
      dis += (dis.empty() ? "" : " ") + std::to_string(i) + "," + std::to_string(j);
    rep.kv("disagreements", dis.empty() ? "none" : dis);
  } else {
    rep.kv("notice", "map lacks a stability certificate; green classifier "
                     "unavailable, graph-probe spot check instead");
    std::string tails;
    for (double d : cr.probe_tail_distances)
      tails += (tails.empty() ? "" : " ") + fmt_double(d);
    rep.kv("probe_tail_distances", tails);
  }
  rep.write(out + "/compare.txt");

  ordered_json j;
  j["schema"] = "projdyn-compare v1";
  j["map"] = f.str();
  j["slice"] = s.str();
  j["params"] = params_json(cp);
  j["green_available"] = cr.green_available;
  if (cr.green_available) {
    j["tau"] = cr.tau;
    j["matrix"] = {{"both_fatou", cr.both_fatou},
                   {"both_julia", cr.both_julia},
                   {"eq_fatou_green_julia", cr.eq_fatou_only},
                   {"eq_julia_green_fatou", cr.eq_julia_only}};
    j["resolved"] = cr.resolved;
    if (cr.agreement_defined) j["agreement"] = cr.agreement;
  } else {
    j["probe_tail_distances"] = cr.probe_tail_distances;
  }
  write_text_file(out + "/compare.json", j.dump(2) + "\n");
  std::cout << rep.str();
  return 0;
}

int cmd_probe_point(const RationalMap& f, const std::string& point, double r,
                    double delta, int depth, int samples,
                    const std::string& out) {
  ensure_outdir(out);
  ProjPoint p = ProjPoint::normalize(parse_triple(point));
  RegularityResult res = regularity_probe(f, p, r, delta, depth, samples);
  Report rep("projdyn-report v1");
  rep.kv("command", "probe");
  rep.kv("map", f.str());
  rep.kv("point", p.str());
  rep.kv("ball_radius", r);
  rep.kv("delta", delta);
  rep.kv("depth", depth);
  rep.kv("samples", samples);
  switch (res.kind) {
    case RegularityResult::Kind::RegularUpToN:
      rep.kv("verdict", res.indeterminacy_empty
                            ? "regular (indeterminacy set empty)"
                            : "regular");
      break;
    case RegularityResult::Kind::NotRegularWitness:
      rep.kv("verdict", "not-regular");
      rep.kv("witness_step", res.witness);
      break;
    case RegularityResult::Kind::Inconclusive:
      rep.kv("verdict", "inconclusive");
      break;
  }
  rep.write(out + "/probe.txt");
  std::cout << rep.str();
  return 0;
}

int cmd_probe_dichotomy(const RationalMap& f, const Slice& s,
                        const ClassifierParams& cp, const DichotomyParams& dp,
                        int workers, const std::string& out) {
  ensure_outdir(out);
  FatouRaster r = fatou_raster(f, s, cp, workers);
  DichotomyReport rep0 = dichotomy_check(f, r, dp);
  Report rep("projdyn-report v1");
  rep.kv("command", "probe-dichotomy");
  rep.kv("map", f.str());
  rep.kv("slice", s.str());
  rep.kv("vacuous", rep0.vacuous);
  if (!rep0.vacuous) {
    rep.kv("components", static_cast<long long>(rep0.components.size()));
    for (const auto& c : rep0.components) {
      std::string key = "component." + std::to_string(c.label);
      if (c.skipped) {
        rep.kv(key, "skipped (fewer than 3 resolvable samples)");
      } else {
        rep.kv(key, "regular_fraction=" + fmt_double(c.fraction) +
                        " probed=" + std::to_string(c.probed) +
                        " regular=" + std::to_string(c.regular) +
                        " not_regular=" + std::to_string(c.not_regular) +
                        " inconclusive=" + std::to_string(c.inconclusive));
      }
    }
  }
  rep.write(out + "/dichotomy.txt");
  std::cout << rep.str();
  return 0;
}

int cmd_corpus(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& e : builtin_corpus())
      std::cout << e.name << "  degree " << e.degree << "  "
                << (e.stable ? "stable" : "unstable") << "  " << e.expression
                << "\n";
    return 0;
  }
  if (action == "show") {
    const CorpusEntry* e = corpus_find(name);
    if (!e) throw Error(Errc::InvalidArgument, "unknown corpus entry: " + name);
    std::cout << corpus_serialize(*e);
    return 0;
  }
  throw Error(Errc::InvalidArgument, "corpus action must be list or show");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational self-map dynamics on the projective plane"};
  app.require_subcommand(1);

  std::string map_expr, corpus_name, out = "out", config;
  int workers = 1;
  double eps_ind = kEpsInd;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--map", map_expr, "map expression [P0 : P1 : P2]");
    sub->add_option("--corpus", corpus_name, "built-in corpus entry name");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--workers", workers, "worker threads (no output effect)");
    sub->add_option("--eps-ind", eps_ind, "near-indeterminacy bailout");
    sub->add_option("--config", config, "key=value file overriding flags");
  };

  SliceOpts so;
  auto add_slice = [&](CLI::App* sub) {
    sub->add_option("--slice", so.kind, "chart | line | plane");
    sub->add_option("--chart", so.chart, "chart coordinate fixed to 1 (x|y|z)");
    sub->add_option("--base", so.base, "base point a,b,c for line/plane");
    sub->add_option("--dir", so.dir, "direction a,b,c for line/plane");
    sub->add_option("--dir2", so.dir2, "second direction for plane");
    sub->add_option("--window", so.window, "parameter window s0,s1,t0,t1");
    sub->add_option("--res", so.res, "resolution N or WxH");
    sub->add_option("--max-res", so.max_res, "resolution ceiling");
  };

  int cdepth = 30, ring = 8, green_depth = 20, analyze_depth = 6;
  double r0 = 1e-3, r0_scale = 1.0, dstab = 0.05, stab_scale = 4.0, dblow = 0.5;
  double tau = -1.0;
  auto add_classifier = [&](CLI::App* sub) {
    sub->add_option("--cn", cdepth, "classifier depth");
    sub->add_option("--ring", ring, "perturbation ring samples");
    sub->add_option("--r0", r0, "ring radius; 0 for per-pixel pitch");
    sub->add_option("--r0-scale", r0_scale, "pitch multiplier in auto mode");
    sub->add_option("--dstab", dstab, "stability threshold");
    sub->add_option("--stab-scale", stab_scale, "auto stability multiplier");
    sub->add_option("--dblow", dblow, "blow-up threshold");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "degrees, stability, indeterminacy");
  add_common(analyze);
  analyze->add_option("--n", analyze_depth, "iterate depth");

  CLI::App* green = app.add_subcommand("green", "escape potential field and mask");
  add_common(green);
  add_slice(green);
  green->add_option("--n", green_depth, "escape depth");
  green->add_option("--tau", tau, "mask threshold; <= 0 for auto");

  CLI::App* classify = app.add_subcommand("classify", "equicontinuity raster");
  add_common(classify);
  add_slice(classify);
  add_classifier(classify);

  CLI::App* compare = app.add_subcommand("compare", "classifier agreement");
  add_common(compare);
  add_slice(compare);
  add_classifier(compare);
  compare->add_option("--n", green_depth, "escape depth for the green side");
  compare->add_option("--tau", tau, "mask threshold; <= 0 for auto");

  CLI::App* probe = app.add_subcommand("probe", "regularity / dichotomy probes");
  add_common(probe);
  add_slice(probe);
  add_classifier(probe);
  std::string point;
  double ball_r = 0.02, delta = 0.3;
  int probe_depth = 25, samples = 8;
  bool dichotomy = false;
  probe->add_option("--point", point, "probe point a,b,c");
  probe->add_option("--r", ball_r, "sample ball radius");
  probe->add_option("--delta", delta, "indeterminacy tube radius");
  probe->add_option("--pn", probe_depth, "probe depth");
  probe->add_option("--samples", samples, "ball samples");
  probe->add_flag("--dichotomy", dichotomy, "per-component regular fractions");

  CLI::App* corpus = app.add_subcommand("corpus", "list or show built-in maps");
  std::string corpus_action = "list", corpus_arg;
  corpus->add_option("action", corpus_action, "list | show");
  corpus->add_option("name", corpus_arg, "entry name for show");

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    if (!config.empty()) apply_config(*sub, config);

    if (sub == corpus) return cmd_corpus(corpus_action, corpus_arg);

    RationalMap f = load_map(map_expr, corpus_name);
    if (sub == analyze) return cmd_analyze(f, analyze_depth, out);

    ClassifierParams cp = build_params(cdepth, ring, r0, r0_scale, dstab,
                                       stab_scale, dblow, eps_ind);
    if (sub == green)
      return cmd_green(f, build_slice(so), green_depth, tau, eps_ind, workers, out);
    if (sub == classify)
      return cmd_classify(f, build_slice(so), cp, workers, out);
    if (sub == compare)
      return cmd_compare(f, build_slice(so), cp, green_depth, tau, workers, out);
    if (sub == probe) {
      if (dichotomy) {
        DichotomyParams dp;
        dp.ball_radius = ball_r;
        dp.delta = delta;
        dp.depth = probe_depth;
        dp.m_samples = samples;
        return cmd_probe_dichotomy(f, build_slice(so), cp, dp, workers, out);
      }
      if (point.empty())
        throw Error(Errc::InvalidArgument, "probe needs --point or --dichotomy");
      return cmd_probe_point(f, point, ball_r, delta, probe_depth, samples, out);
    }
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    ordered_json err;
    err["error"] = errc_name(e.code());
    err["code"] = static_cast<int>(e.code());
    err["message"] = e.what();
    if (e.has_position()) err["position"] = e.position();
    std::cerr << err.dump() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = "Internal";
    err["code"] = 70;
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 70;
  }
}
