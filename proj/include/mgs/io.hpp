#ifndef MGS_IO_HPP
#define MGS_IO_HPP

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mgs/plan.hpp"

namespace mgs::io {

using json = nlohmann::ordered_json;

/// Malformed input (exit code 2 at the CLI).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat read_rat(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
        if (j.is_string()) return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected an integer or a \"p/q\" string");
}

inline std::string write_rat(const Rat& q) { return rat_repr(q); }

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

inline std::unique_ptr<NumericalModel> model_from_json(const json& j) {
    for (const char* key : {"name", "dim", "basis", "products", "todd"})
        if (!j.contains(key)) throw InputError("model: missing field '" + std::string(key) + "'");
    std::vector<std::vector<std::string>> basis;
    for (const auto& deg : j["basis"]) basis.push_back(deg.get<std::vector<std::string>>());
    std::unique_ptr<NumericalModel> m;
    try {
        m = std::make_unique<NumericalModel>(j["name"].get<std::string>(), j["dim"].get<int>(),
                                             std::move(basis));
        for (const auto& p : j["products"]) {
            std::map<std::string, Rat> result;
            for (const auto& [nm, val] : p["result"].items())
                result[nm] = read_rat(val, "model product " + nm);
            m->set_product(p["a"].get<std::string>(), p["b"].get<std::string>(), result);
        }
        std::map<std::string, Rat> todd;
        for (const auto& [nm, val] : j["todd"].items()) todd[nm] = read_rat(val, "model todd " + nm);
        m->set_todd(todd);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("model: ") + e.what());
    }
    std::vector<ModelViolation> bad = m->validate();
    if (!bad.empty())
        throw InputError("model fails " + bad.front().kind + " check: " + bad.front().detail);
    return m;
}

struct SurfaceRequest {
    std::string L0, L1, Lbar;
    long a = 1;
};

/// A parsed problem file: the model, named divisors and sheaf types, the
/// subsheaf family, and optional plan requests. `raw` keeps the problem
/// content for embedding into plan documents.
struct Problem {
    std::shared_ptr<NumericalModel> owned;
    const NumericalModel* model = nullptr;
    std::map<std::string, DivisorClass> divisors;
    std::map<std::string, SheafType> sheaves;
    std::optional<SubsheafFamily> family;
    std::optional<std::pair<std::string, std::string>> plan_request;  // L0, L1
    std::optional<SurfaceRequest> surface_request;
    json raw;

    const DivisorClass& divisor(const std::string& name) const {
        auto it = divisors.find(name);
        if (it == divisors.end()) throw InputError("unknown divisor '" + name + "'");
        return it->second;
    }
    const SheafType& sheaf(const std::string& name) const {
        auto it = sheaves.find(name);
        if (it == sheaves.end()) throw InputError("unknown sheaf '" + name + "'");
        return it->second;
    }
    SubsheafFamily require_family() const {
        if (!family) throw InputError("problem has no 'family' section");
        return *family;
    }
};

/// Divisor written as a literal like "O(1,2)": coordinates in the degree-1
/// basis. Returns nothing when the text is not of that shape.
inline std::optional<DivisorClass> parse_divisor_literal(const NumericalModel& m,
                                                         const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') return std::nullopt;
    std::vector<Rat> coords;
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::stringstream ss(body);
    std::string piece;
    while (std::getline(ss, piece, ',')) coords.push_back(parse_rat(piece));
    if (coords.size() != m.basis_size(1)) return std::nullopt;
    return DivisorClass{m.make_divisor(coords), true, text};
}

inline Problem load_problem(const json& j) {
    Problem p;
    p.raw = j;
    if (!j.contains("model")) throw InputError("problem: missing 'model'");
    if (j["model"].is_string()) {
        p.model = models::builtin(j["model"].get<std::string>());
        if (!p.model) throw InputError("unknown built-in model '" + j["model"].get<std::string>() + "'");
    } else {
        p.owned = model_from_json(j["model"]);
        p.model = p.owned.get();
    }
    const NumericalModel& m = *p.model;

    for (const auto& d : j.value("divisors", json::array())) {
        std::string name = d.at("name").get<std::string>();
        std::vector<Rat> coords;
        for (const auto& c : d.at("coords")) coords.push_back(read_rat(c, "divisor " + name));
        if (coords.size() != m.basis_size(1))
            throw InputError("divisor " + name + ": expected " + std::to_string(m.basis_size(1)) +
                             " coordinates");
        p.divisors.emplace(name, DivisorClass{m.make_divisor(coords), d.value("ample", false), name});
    }

    for (const auto& s : j.value("sheaves", json::array())) {
        std::string name = s.at("name").get<std::string>();
        GradedClass ch(m);
        ch.coord(0, 0) = UniPoly(read_rat(s.at("rank"), "sheaf " + name + " rank"));
        if (s.contains("ch"))
            for (const auto& [nm, val] : s["ch"].items()) {
                auto [deg, idx] = m.locate(nm);
                if (deg == 0) throw InputError("sheaf " + name + ": rank goes in 'rank', not 'ch'");
                ch.coord(deg, idx) = UniPoly(read_rat(val, "sheaf " + name + " ch." + nm));
            }
        p.sheaves.emplace(name, SheafType{name, std::move(ch)});
    }

    if (j.contains("family")) {
        const json& f = j["family"];
        SubsheafFamily fam;
        fam.ambient = p.sheaf(f.at("ambient").get<std::string>());
        for (const auto& nm : f.value("members", json::array()))
            fam.members.push_back(p.sheaf(nm.get<std::string>()));
        p.family = std::move(fam);
    }

    if (j.contains("plan")) {
        const json& q = j["plan"];
        p.plan_request = {q.at("L0").get<std::string>(), q.at("L1").get<std::string>()};
    }
    if (j.contains("surface")) {
        const json& q = j["surface"];
        p.surface_request = SurfaceRequest{q.at("L0").get<std::string>(), q.at("L1").get<std::string>(),
                                           q.at("Lbar").get<std::string>(), q.at("a").get<long>()};
    }
    return p;
}

inline Problem load_problem_file(const std::string& path) { return load_problem(load_json_file(path)); }

// ---- plan documents -------------------------------------------------------

inline json poly_json(const UniPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(write_rat(c));
    return json{{"var", p.var()}, {"coeffs", coeffs}, {"text", p.str()}};
}

inline json walls_json(const std::vector<WallPoint>& walls) {
    json out = json::array();
    for (const auto& w : walls) {
        json tags = json::array();
        for (const auto& [member, idx] : w.tags) tags.push_back(json{{"member", member}, {"index", idx}});
        out.push_back(json{{"value", write_rat(w.value)}, {"tags", tags}});
    }
    return out;
}

inline json schedule_json(const FlipSchedule& s) {
    json anchors = json::array(), mids = json::array();
    for (const auto& x : s.anchors) anchors.push_back(write_rat(x));
    for (const auto& x : s.intermediates) mids.push_back(write_rat(x));
    return json{{"segment", s.segment_ref}, {"anchors", anchors}, {"intermediates", mids}};
}

inline json options_json(const PlanOptions& opts) {
    json o;
    o["lambda"] = opts.lambda ? json(write_rat(*opts.lambda)) : json(nullptr);
    o["a"] = opts.a ? json(*opts.a) : json(nullptr);
    o["schedule"] = json::array({write_rat(opts.schedule_lo), write_rat(opts.schedule_hi)});
    return o;
}

inline PlanOptions options_from_json(const json& o) {
    PlanOptions opts;
    if (!o.is_object()) return opts;
    if (o.contains("lambda") && !o["lambda"].is_null()) opts.lambda = read_rat(o["lambda"], "options.lambda");
    if (o.contains("a") && !o["a"].is_null()) opts.a = o["a"].get<long>();
    if (o.contains("schedule")) {
        opts.schedule_lo = read_rat(o["schedule"][0], "options.schedule");
        opts.schedule_hi = read_rat(o["schedule"][1], "options.schedule");
    }
    return opts;
}

inline json plan_to_json(const VariationPlan& plan, const json& problem_raw, const PlanOptions& opts) {
    json doc;
    doc["format"] = "mgs-plan/1";
    doc["kind"] = plan.kind;
    doc["problem"] = problem_raw;
    doc["options"] = options_json(opts);

    if (plan.kind == "threefold-zoom") {
        json sig;
        sig["L0"] = plan.sigma.L0.name;
        sig["L1"] = plan.sigma.L1.name;
        sig["vol"] = json::array({write_rat(plan.sigma.L0.cls.model().volume(plan.sigma.L0)),
                                  write_rat(plan.sigma.L1.cls.model().volume(plan.sigma.L1))});
        json c = json::array();
        for (int i = 0; i < 2; ++i)
            c.push_back(json::array({write_rat(plan.sigma.c[static_cast<std::size_t>(i)][0]),
                                     write_rat(plan.sigma.c[static_cast<std::size_t>(i)][1])}));
        sig["c"] = c;
        sig["generic"] = plan.sigma.generic;
        doc["sigma"] = sig;
    }
    doc["walls"] = walls_json(plan.root_walls);

    json etas = json::array();
    for (const auto& rec : plan.etas) {
        json e;
        e["tbar"] = write_rat(rec.tbar);
        e["t0"] = write_rat(rec.t0);
        e["t1"] = write_rat(rec.t1);
        e["a"] = rec.a;
        if (rec.ok) {
            json ex = json::array();
            for (int jj = 0; jj < 2; ++jj)
                ex.push_back(json::array({rec.eta.expo[static_cast<std::size_t>(jj)][0],
                                          rec.eta.expo[static_cast<std::size_t>(jj)][1]}));
            e["exponents"] = ex;
            e["walls"] = walls_json(rec.walls);
        }
        e["ok"] = rec.ok;
        json zetas = json::array();
        for (const auto& zr : rec.zetas) {
            json z;
            z["sbar"] = write_rat(zr.sbar);
            z["s0"] = write_rat(zr.s0);
            z["s1"] = write_rat(zr.s1);
            z["lambda"] = write_rat(zr.lambda);
            z["b"] = write_rat(zr.b);
            if (zr.ok) {
                json q = json::array(), alpha = json::array(), beta = json::array(), tn = json::array();
                for (int jj = 0; jj < 2; ++jj) {
                    q.push_back(json::array({write_rat(zr.zeta.q[static_cast<std::size_t>(jj)][0]),
                                             write_rat(zr.zeta.q[static_cast<std::size_t>(jj)][1])}));
                    for (int i = 0; i < 2; ++i) {
                        json arow = json::array(), brow = json::array();
                        for (int k = 0; k < 2; ++k) {
                            arow.push_back(write_rat(zr.zeta.ab.alpha[jj][i][k]));
                            brow.push_back(write_rat(zr.zeta.ab.beta[jj][i][k]));
                        }
                        alpha.push_back(json{{"j", jj}, {"i", i}, {"values", arow}});
                        beta.push_back(json{{"j", jj}, {"i", i}, {"values", brow}});
                        tn.push_back(json{{"j", jj},
                                          {"i", i},
                                          {"n", json::array(
                                                    {zr.zeta.twist_n[static_cast<std::size_t>(jj)]
                                                                    [static_cast<std::size_t>(i)][0],
                                                     zr.zeta.twist_n[static_cast<std::size_t>(jj)]
                                                                    [static_cast<std::size_t>(i)][1]})}});
                    }
                }
                z["q"] = q;
                z["alpha"] = alpha;
                z["beta"] = beta;
                z["twist_exponents"] = tn;
            }
            if (zr.schedule) z["schedule"] = schedule_json(*zr.schedule);
            z["ok"] = zr.ok;
            zetas.push_back(std::move(z));
        }
        e["zetas"] = std::move(zetas);
        etas.push_back(std::move(e));
    }
    doc["etas"] = std::move(etas);
    if (plan.surface_schedule) doc["schedule"] = schedule_json(*plan.surface_schedule);

    json ledger = json::array();
    for (const auto& le : plan.ledger)
        ledger.push_back(json{{"check", le.check}, {"passed", le.passed}, {"detail", le.detail}});
    doc["ledger"] = std::move(ledger);
    doc["warnings"] = plan.warnings;
    doc["complete"] = plan.complete;
    doc["verdict"] = plan.complete ? "plan complete" : "plan incomplete";
    return doc;
}

inline std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

// ---- plot data -------------------------------------------------------------

/// Exact CSV cell: terminating decimal expansion when one exists, else p/q.
inline std::string csv_cell(const Rat& q) {
    if (auto dec = terminating_decimal(q)) return *dec;
    return rat_repr(q);
}

/// Sample the member difference vectors along a segment: one row per sample
/// point and per wall, columns t, h_i per member, and a wall marker.
inline std::string plot_csv(const StabilitySegment& seg, const SubsheafFamily& fam, int samples = 64) {
    std::vector<std::pair<std::string, CoefficientVector>> dvs;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        dvs.emplace_back(F.name, difference_vector(F, fam.ambient, seg));
    }
    std::vector<Rat> points;
    for (int i = 0; i <= samples; ++i) points.push_back(rat(i, samples));
    std::vector<Rat> wall_values;
    for (const auto& w : segment_walls(seg, fam).walls) {
        wall_values.push_back(w.value);
        points.push_back(w.value);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::string out = seg.param;
    for (const auto& [name, dv] : dvs)
        for (std::size_t i = 0; i < dv.entries.size(); ++i)
            out += ",h" + std::to_string(i + 1) + "(" + name + ")";
    out += ",wall\n";
    for (const auto& t : points) {
        out += csv_cell(t);
        for (const auto& [name, dv] : dvs)
            for (const auto& e : dv.entries) out += "," + csv_cell(e.at(t));
        bool on_wall = std::find(wall_values.begin(), wall_values.end(), t) != wall_values.end();
        out += on_wall ? ",1\n" : ",0\n";
    }
    return out;
}

/// Minimal static wall diagram: the unit parameter interval with wall ticks.
inline std::string wall_svg(const std::vector<WallPoint>& walls, const std::string& param) {
    auto x_of = [](const Rat& t) {
        // viewport x in [40, 760], integer coordinates only
        Rat x = Rat(40) + Rat(720) * t;
        return floor_div(x).get_str();
    };
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"120\" "
        "viewBox=\"0 0 800 120\">\n"
        "<line x1=\"40\" y1=\"60\" x2=\"760\" y2=\"60\" stroke=\"black\"/>\n"
        "<text x=\"36\" y=\"80\" font-size=\"12\">0</text>\n"
        "<text x=\"756\" y=\"80\" font-size=\"12\">1</text>\n"
        "<text x=\"400\" y=\"110\" font-size=\"12\">" + param + "</text>\n";
    for (const auto& w : walls) {
        std::string x = x_of(w.value);
        svg += "<line x1=\"" + x + "\" y1=\"40\" x2=\"" + x + "\" y2=\"80\" stroke=\"red\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"34\" font-size=\"12\" text-anchor=\"middle\">" +
               rat_repr(w.value) + "</text>\n";
    }
    return svg + "</svg>\n";
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace mgs::io

#endif
