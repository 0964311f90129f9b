// mgs — exact multi-Gieseker stability toolkit command line.
//
// Exit codes: 0 success, 1 check failure (report printed), 2 input error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mgs/io.hpp"

using namespace mgs;
using io::json;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const NumericalModel* resolve_model(const std::string& ref, std::unique_ptr<NumericalModel>& owned) {
    if (const NumericalModel* m = models::builtin(ref)) return m;
    owned = io::model_from_json(io::load_json_file(ref));
    return owned.get();
}

DivisorClass resolve_divisor(const NumericalModel& m, const io::Problem* prob, const std::string& ref) {
    if (prob) {
        auto it = prob->divisors.find(ref);
        if (it != prob->divisors.end()) return it->second;
    }
    if (auto lit = io::parse_divisor_literal(m, ref)) return *lit;
    throw io::InputError("cannot resolve divisor '" + ref + "'");
}

SheafType resolve_sheaf(const NumericalModel& m, const io::Problem* prob, const std::string& ref) {
    if (ref == "O") return structure_sheaf(m);
    if (prob) return prob->sheaf(ref);
    throw io::InputError("cannot resolve sheaf '" + ref + "' without --problem");
}

StabilitySegment root_segment(const io::Problem& prob, SigmaSegment* sigma_out = nullptr) {
    if (prob.surface_request) {
        const auto& r = *prob.surface_request;
        VariationPlan p = surface_plan(prob.divisor(r.L0), prob.divisor(r.L1), prob.divisor(r.Lbar),
                                       prob.require_family(), r.a);
        return p.root;
    }
    if (!prob.plan_request) throw io::InputError("problem has neither 'plan' nor 'surface' request");
    SigmaSegment sg = make_sigma(prob.divisor(prob.plan_request->first),
                                 prob.divisor(prob.plan_request->second));
    if (sigma_out) *sigma_out = sg;
    return sg.seg;
}

void print_ledger(const VariationPlan& plan) {
    for (const auto& e : plan.ledger)
        std::cout << (e.passed ? "PASS " : "FAIL ") << e.check
                  << (e.detail.empty() ? "" : " — " + e.detail) << "\n";
    for (const auto& w : plan.warnings) std::cout << "WARN " << w << "\n";
    std::cout << (plan.complete ? "plan complete" : "plan incomplete") << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact multi-Gieseker stability toolkit"};
    app.require_subcommand(1);

    // validate <file>
    std::string validate_path;
    CLI::App* c_validate = app.add_subcommand("validate", "validate a .model or .prob file");
    c_validate->add_option("file", validate_path)->required();

    // chi
    std::string chi_model, chi_sheaf = "O", chi_L, chi_problem;
    long chi_k = 0;
    CLI::App* c_chi = app.add_subcommand("chi", "Euler characteristic chi(E tensor L^k)");
    c_chi->add_option("--model", chi_model, "built-in model name or .model file");
    c_chi->add_option("--problem", chi_problem, "resolve names from this problem file");
    c_chi->add_option("--sheaf", chi_sheaf, "sheaf name ('O' = structure sheaf)");
    c_chi->add_option("--L", chi_L, "divisor name or literal like O(1,1)")->required();
    c_chi->add_option("--k", chi_k, "twist power")->required();

    // walls
    std::string walls_problem;
    CLI::App* c_walls = app.add_subcommand("walls", "wall functions of the family on the request line");
    c_walls->add_option("--problem", walls_problem)->required();

    // chambers
    std::string chambers_problem;
    CLI::App* c_chambers = app.add_subcommand("chambers", "walls and chambers of the root segment");
    c_chambers->add_option("--problem", chambers_problem)->required();

    // segment sigma|eta|zeta
    std::string seg_kind, seg_problem;
    std::string seg_tbar, seg_t0, seg_t1, seg_sbar, seg_s0, seg_s1, seg_lambda, seg_b;
    long seg_a = 0;
    CLI::App* c_segment = app.add_subcommand("segment", "construct a sigma/eta/zeta segment");
    c_segment->add_option("kind", seg_kind)->required()->check(CLI::IsMember({"sigma", "eta", "zeta"}));
    c_segment->add_option("--problem", seg_problem)->required();
    c_segment->add_option("--tbar", seg_tbar);
    c_segment->add_option("--t0", seg_t0);
    c_segment->add_option("--t1", seg_t1);
    c_segment->add_option("--a", seg_a);
    c_segment->add_option("--sbar", seg_sbar);
    c_segment->add_option("--s0", seg_s0);
    c_segment->add_option("--s1", seg_s1);
    c_segment->add_option("--lambda", seg_lambda);
    c_segment->add_option("--b", seg_b);

    // verify uniform|open|equiv
    std::string verify_kind, verify_problem, verify_mode = "difference", verify_v1, verify_v2;
    CLI::App* c_verify = app.add_subcommand("verify", "check a predicate on the root segment");
    c_verify->add_option("kind", verify_kind)
        ->required()
        ->check(CLI::IsMember({"uniform", "open", "equiv"}));
    c_verify->add_option("--problem", verify_problem)->required();
    c_verify->add_option("--mode", verify_mode)->check(CLI::IsMember({"strict", "difference"}));
    c_verify->add_option("--v1", verify_v1);
    c_verify->add_option("--v2", verify_v2);

    // schedule
    std::string sched_problem, sched_lo = "1/100", sched_hi = "99/100";
    CLI::App* c_schedule = app.add_subcommand("schedule", "flip schedule of a difference-uniform root segment");
    c_schedule->add_option("--problem", sched_problem)->required();
    c_schedule->add_option("--lo", sched_lo);
    c_schedule->add_option("--hi", sched_hi);

    // plan
    std::string plan_problem, plan_out, plan_lambda, plan_lo, plan_hi;
    long plan_a = 0;
    CLI::App* c_plan = app.add_subcommand("plan", "full threefold zooming plan");
    c_plan->add_option("--problem", plan_problem)->required();
    c_plan->add_option("--out", plan_out, "write the plan document here");
    c_plan->add_option("--lambda", plan_lambda, "override the default lambda_min + 1");
    c_plan->add_option("--a", plan_a, "override the divisibility search");
    c_plan->add_option("--lo", plan_lo);
    c_plan->add_option("--hi", plan_hi);

    // surface-plan
    std::string splan_problem, splan_out;
    CLI::App* c_splan = app.add_subcommand("surface-plan", "direct surface plan");
    c_splan->add_option("--problem", splan_problem)->required();
    c_splan->add_option("--out", splan_out);

    // plot
    std::string plot_problem, plot_csv_path, plot_svg_path;
    int plot_samples = 64;
    CLI::App* c_plot = app.add_subcommand("plot", "sample the root segment into CSV (and SVG walls)");
    c_plot->add_option("--problem", plot_problem)->required();
    c_plot->add_option("--csv", plot_csv_path, "CSV output path (default: stdout)");
    c_plot->add_option("--svg", plot_svg_path, "optional wall-diagram SVG path");
    c_plot->add_option("--samples", plot_samples)->check(CLI::PositiveNumber);

    // replan --verify
    std::string replan_path;
    bool replan_verify = false;
    CLI::App* c_replan = app.add_subcommand("replan", "re-run a plan document from its stored inputs");
    c_replan->add_option("file", replan_path)->required();
    c_replan->add_flag("--verify", replan_verify, "byte-compare the rebuilt document against the stored one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*c_validate) {
        json j = io::load_json_file(validate_path);
        if (j.contains("basis")) {
            io::model_from_json(j);
            std::cout << "model valid\n";
        } else {
            io::load_problem(j);
            std::cout << "problem valid\n";
        }
        return 0;
    }

    if (*c_chi) {
        std::unique_ptr<NumericalModel> owned;
        std::optional<io::Problem> prob;
        const NumericalModel* m = nullptr;
        if (!chi_problem.empty()) {
            prob = io::load_problem_file(chi_problem);
            m = prob->model;
        }
        if (!chi_model.empty()) m = resolve_model(chi_model, owned);
        if (!m) throw io::InputError("chi needs --model or --problem");
        SheafType E = resolve_sheaf(*m, prob ? &*prob : nullptr, chi_sheaf);
        DivisorClass L = resolve_divisor(*m, prob ? &*prob : nullptr, chi_L);
        std::cout << rat_repr(euler_characteristic_at(E, L, chi_k)) << "\n";
        return 0;
    }

    if (*c_walls) {
        io::Problem prob = io::load_problem_file(walls_problem);
        SubsheafFamily fam = prob.require_family();
        if (!prob.plan_request) throw io::InputError("walls needs a 'plan' request (L0, L1)");
        DivisorClass L0 = prob.divisor(prob.plan_request->first);
        DivisorClass L1 = prob.divisor(prob.plan_request->second);
        const int d = prob.model->dim();
        for (const auto& F : fam.members) {
            if (degenerate_member(fam, F)) {
                std::cout << F.name << ": degenerate rank, skipped\n";
                continue;
            }
            for (int i = 1; i <= d; ++i) {
                WallFunction w = make_wall(F, fam.ambient, i);
                std::cout << F.name << " i=" << i;
                if (w.trivial()) {
                    std::cout << " trivial\n";
                    continue;
                }
                UniPoly b0 = beta_at(w, L0.cls), b1 = beta_at(w, L1.cls);
                std::cout << " beta(L0)=" << rat_repr(b0.constant_term())
                          << " beta(L1)=" << rat_repr(b1.constant_term());
                if (i < d) {
                    RootReport roots = walls_on_ample_line(F, fam.ambient, L0, L1, i);
                    std::cout << " roots_on_line=" << roots.count();
                    for (const auto& r : roots.exact_roots) std::cout << " " << rat_repr(r);
                }
                std::cout << "\n";
            }
        }
        GeneralityReport g0 = is_general(L0, fam), g1 = is_general(L1, fam);
        std::cout << "L0 general: " << (g0.general ? "yes" : "no (" + g0.witness_member + ", i=" +
                                                                 std::to_string(g0.witness_index) + ")")
                  << "\n";
        std::cout << "L1 general: " << (g1.general ? "yes" : "no (" + g1.witness_member + ", i=" +
                                                                 std::to_string(g1.witness_index) + ")")
                  << "\n";
        SeparationReport sep = classify_separation(fam, L0, L1);
        std::cout << "separation: "
                  << (sep.verdict == SeparationReport::Verdict::no_wall             ? "no_wall"
                      : sep.verdict == SeparationReport::Verdict::single_first_kind ? "single_first_kind"
                                                                                    : "other")
                  << (sep.detail.empty() ? "" : " (" + sep.detail + ")") << "\n";
        return 0;
    }

    if (*c_chambers) {
        io::Problem prob = io::load_problem_file(chambers_problem);
        SubsheafFamily fam = prob.require_family();
        StabilitySegment seg = root_segment(prob);
        ChamberDecomposition cd = segment_walls(seg, fam);
        for (const auto& w : cd.walls) {
            std::cout << "wall " << seg.param << " = " << rat_repr(w.value) << " [";
            for (std::size_t i = 0; i < w.tags.size(); ++i)
                std::cout << (i ? ", " : "") << w.tags[i].first << " i=" << w.tags[i].second;
            std::cout << "]\n";
        }
        for (const auto& c : cd.chambers)
            std::cout << "chamber (" << rat_repr(c.lo) << ", " << rat_repr(c.hi)
                      << ") rep " << rat_repr(c.representative) << "\n";
        return 0;
    }

    if (*c_segment) {
        io::Problem prob = io::load_problem_file(seg_problem);
        SubsheafFamily fam = prob.require_family();
        if (!prob.plan_request) throw io::InputError("segment needs a 'plan' request (L0, L1)");
        SigmaSegment sg = make_sigma(prob.divisor(prob.plan_request->first),
                                     prob.divisor(prob.plan_request->second));
        auto report = [&](const StabilitySegment& s, const std::string& nm) {
            UniformityReport us = is_uniform(s, UniformityMode::strict);
            UniformityReport ud = is_uniform(s, UniformityMode::difference);
            std::string w;
            bool open = is_open(s, fam, &w);
            std::cout << nm << ": normalized=" << (is_normalized(s) ? "yes" : "no")
                      << " strict-uniform=" << (us.uniform ? "yes" : "no")
                      << " difference-uniform=" << (ud.uniform ? "yes" : "no")
                      << " open=" << (open ? "yes" : "no (" + w + ")") << "\n";
        };
        if (seg_kind == "sigma") {
            std::cout << "sigma: generic=" << (sg.generic ? "yes" : "no") << "\n";
            report(sg.seg, "sigma");
            return 0;
        }
        if (seg_tbar.empty() || seg_t0.empty() || seg_t1.empty())
            throw io::InputError("eta/zeta need --tbar, --t0, --t1");
        Rat tbar = parse_rat(seg_tbar), t0 = parse_rat(seg_t0), t1 = parse_rat(seg_t1);
        long a = seg_a > 0 ? seg_a : minimal_divisibility_a(sg, tbar, t0, t1);
        EtaSegment eta = make_eta(sg, tbar, t0, t1, a);
        if (seg_kind == "eta") {
            std::cout << "eta: a=" << a << " exponents=[" << eta.expo[0][0] << "," << eta.expo[0][1]
                      << ";" << eta.expo[1][0] << "," << eta.expo[1][1] << "]\n";
            report(eta.seg, "eta");
            return 0;
        }
        if (seg_sbar.empty() || seg_s0.empty() || seg_s1.empty())
            throw io::InputError("zeta needs --sbar, --s0, --s1");
        Rat sbar = parse_rat(seg_sbar), s0 = parse_rat(seg_s0), s1 = parse_rat(seg_s1);
        Rat lmin = minimal_lambda(eta, sbar, s0, s1);
        Rat lambda = seg_lambda.empty() ? lmin + 1 : parse_rat(seg_lambda);
        Rat b = seg_b.empty() ? search_b(eta, sbar, s0, s1, lambda, fam) : parse_rat(seg_b);
        ZetaSegment zeta = make_zeta(eta, sbar, s0, s1, lambda, b);
        std::cout << "zeta: lambda=" << rat_repr(lambda) << " (lambda_min=" << rat_repr(lmin)
                  << ") b=" << rat_repr(b) << "\n";
        for (int jj = 0; jj < 2; ++jj)
            for (int i = 0; i < 2; ++i)
                std::cout << "  alpha[j=" << jj << ",i=" << i << "] = ("
                          << rat_repr(zeta.ab.alpha[jj][i][0]) << ", " << rat_repr(zeta.ab.alpha[jj][i][1])
                          << ")\n";
        report(zeta.seg, "zeta");
        return 0;
    }

    if (*c_verify) {
        io::Problem prob = io::load_problem_file(verify_problem);
        SubsheafFamily fam = prob.require_family();
        StabilitySegment seg = root_segment(prob);
        if (verify_kind == "uniform") {
            UniformityMode mode =
                verify_mode == "strict" ? UniformityMode::strict : UniformityMode::difference;
            UniformityReport u = is_uniform(seg, mode);
            if (u.uniform) {
                std::cout << "uniform (" << verify_mode << ")\n";
                return 0;
            }
            std::cout << "not uniform (" << verify_mode << "): k^" << u.k_power
                      << " coefficient varies on coordinate " << u.coordinate << "\n";
            throw CheckFailure("uniformity fails");
        }
        if (verify_kind == "open") {
            std::string w;
            if (is_open(seg, fam, &w)) {
                std::cout << "open\n";
                return 0;
            }
            std::cout << "not open: witness " << w << "\n";
            throw CheckFailure("openness fails");
        }
        if (verify_v1.empty() || verify_v2.empty()) throw io::InputError("equiv needs --v1 and --v2");
        std::string w;
        if (equivalent_at(seg, fam, parse_rat(verify_v1), parse_rat(verify_v2), &w)) {
            std::cout << "equivalent\n";
            return 0;
        }
        std::cout << "not equivalent: witness " << w << "\n";
        throw CheckFailure("equivalence fails");
    }

    if (*c_schedule) {
        io::Problem prob = io::load_problem_file(sched_problem);
        SubsheafFamily fam = prob.require_family();
        StabilitySegment seg = root_segment(prob);
        FlipSchedule s;
        try {
            s = flip_schedule(seg, fam, parse_rat(sched_lo), parse_rat(sched_hi), "root");
        } catch (const std::invalid_argument& e) {
            std::cout << "no schedule: " << e.what() << "\n";
            throw CheckFailure("schedule fails");
        }
        std::cout << "anchors:";
        for (const auto& x : s.anchors) std::cout << " " << rat_repr(x);
        std::cout << "\nintermediates:";
        for (const auto& x : s.intermediates) std::cout << " " << rat_repr(x);
        std::cout << "\n";
        return 0;
    }

    if (*c_plan) {
        io::Problem prob = io::load_problem_file(plan_problem);
        SubsheafFamily fam = prob.require_family();
        if (!prob.plan_request) throw io::InputError("plan needs a 'plan' request (L0, L1)");
        PlanOptions opts;
        if (!plan_lambda.empty()) opts.lambda = parse_rat(plan_lambda);
        if (plan_a > 0) opts.a = plan_a;
        if (!plan_lo.empty()) opts.schedule_lo = parse_rat(plan_lo);
        if (!plan_hi.empty()) opts.schedule_hi = parse_rat(plan_hi);
        VariationPlan plan = build_plan(prob.divisor(prob.plan_request->first),
                                        prob.divisor(prob.plan_request->second), fam, opts);
        if (!plan_out.empty())
            io::write_file(plan_out, io::dump_document(io::plan_to_json(plan, prob.raw, opts)));
        print_ledger(plan);
        if (!plan.complete) throw CheckFailure("plan incomplete");
        return 0;
    }

    if (*c_splan) {
        io::Problem prob = io::load_problem_file(splan_problem);
        SubsheafFamily fam = prob.require_family();
        if (!prob.surface_request) throw io::InputError("surface-plan needs a 'surface' request");
        const auto& r = *prob.surface_request;
        PlanOptions opts;
        VariationPlan plan = surface_plan(prob.divisor(r.L0), prob.divisor(r.L1), prob.divisor(r.Lbar),
                                          fam, r.a, opts);
        if (!splan_out.empty())
            io::write_file(splan_out, io::dump_document(io::plan_to_json(plan, prob.raw, opts)));
        print_ledger(plan);
        if (!plan.complete) throw CheckFailure("plan incomplete");
        return 0;
    }

    if (*c_plot) {
        io::Problem prob = io::load_problem_file(plot_problem);
        SubsheafFamily fam = prob.require_family();
        StabilitySegment seg = root_segment(prob);
        std::string csv = io::plot_csv(seg, fam, plot_samples);
        if (plot_csv_path.empty())
            std::cout << csv;
        else
            io::write_file(plot_csv_path, csv);
        if (!plot_svg_path.empty())
            io::write_file(plot_svg_path, io::wall_svg(segment_walls(seg, fam).walls, seg.param));
        return 0;
    }

    if (*c_replan) {
        json doc = io::load_json_file(replan_path);
        if (!doc.contains("problem") || !doc.contains("kind"))
            throw io::InputError("not a plan document");
        io::Problem prob = io::load_problem(doc["problem"]);
        SubsheafFamily fam = prob.require_family();
        PlanOptions opts = io::options_from_json(doc.value("options", json::object()));
        VariationPlan plan;
        if (doc["kind"] == "surface") {
            if (!prob.surface_request) throw io::InputError("stored problem has no 'surface' request");
            const auto& r = *prob.surface_request;
            plan = surface_plan(prob.divisor(r.L0), prob.divisor(r.L1), prob.divisor(r.Lbar), fam, r.a,
                                opts);
        } else {
            if (!prob.plan_request) throw io::InputError("stored problem has no 'plan' request");
            plan = build_plan(prob.divisor(prob.plan_request->first),
                              prob.divisor(prob.plan_request->second), fam, opts);
        }
        print_ledger(plan);
        if (replan_verify) {
            std::string rebuilt = io::dump_document(io::plan_to_json(plan, prob.raw, opts));
            std::string stored = io::dump_document(doc);
            if (rebuilt != stored) {
                std::cout << "verify: document mismatch\n";
                throw CheckFailure("replan verify fails");
            }
            std::cout << "verify: document identical\n";
        }
        if (!plan.complete) throw CheckFailure("plan incomplete");
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CheckFailure&) {
        return 1;
    } catch (const io::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
