// Command-line front end: root-system info, cell listings, chart
// classification, exact homology, verification suites and Toda simulation.
// Output is deterministic for fixed flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "todatopo/atlas.hpp"
#include "todatopo/complex.hpp"
#include "todatopo/diagram.hpp"
#include "todatopo/rootsys.hpp"
#include "todatopo/toda.hpp"

using json = nlohmann::ordered_json;
using namespace todatopo;

namespace {

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::string t = text;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream in(t);
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

std::vector<int> parse_signs(const std::string& text) {
    std::vector<int> out;
    for (char c : text) {
        if (c == '+')
            out.push_back(1);
        else if (c == '-')
            out.push_back(-1);
        else if (c == ',' || c == ' ')
            continue;
        else
            throw Error(std::string("bad sign character '") + c + "'");
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json torsion_json(const std::vector<BigInt>& torsion) {
    json arr = json::array();
    for (const auto& f : torsion) arr.push_back(f.str());
    return arr;
}

int run_rootsys_info(const std::string& type, const Config& cfg, bool as_json) {
    auto rs = RootSystem::parse(type, cfg);
    auto W = WeylGroup::enumerate(rs, cfg);
    if (as_json) {
        json out;
        out["schema"] = "1";
        out["type"] = rs.name();
        out["rank"] = rs.rank();
        out["cartan"] = rs.cartan();
        out["positive_roots"] = rs.num_positive_roots();
        out["weyl_order"] = W.order();
        json cox = json::array();
        for (int i = 0; i < rs.rank(); ++i) {
            json row = json::array();
            for (int j = 0; j < rs.rank(); ++j) row.push_back(rs.coxeter_order(i, j));
            cox.push_back(row);
        }
        out["coxeter_orders"] = cox;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << rs.name() << ": rank " << rs.rank() << ", " << rs.num_positive_roots()
                  << " positive roots, |W| = " << W.order() << "\n";
        std::cout << "Cartan matrix:\n";
        for (const auto& row : rs.cartan()) {
            for (int v : row) std::cout << "  " << v;
            std::cout << "\n";
        }
    }
    return 0;
}

int run_cells(const std::string& type, const Config& cfg, bool list, bool as_json) {
    auto rs = RootSystem::parse(type, cfg);
    auto W = WeylGroup::enumerate(rs, cfg);
    auto cc = ChainComplex::build(rs, W);
    auto fv = cc.f_vector();
    if (as_json) {
        json out;
        out["schema"] = "1";
        out["type"] = rs.name();
        out["counts"] = fv;
        if (list) {
            json cells = json::array();
            for (int d = 0; d <= cc.top_degree(); ++d) {
                for (const auto& cell : cc.basis(d)) {
                    json c;
                    c["dim"] = d;
                    c["diagram"] = cell.diagram.text();
                    c["chamber"] = W.word_string(cell.coset_rep);
                    json box = json::array();
                    for (auto f : chart_image(cell.diagram)) box.push_back(box_factor_text(f));
                    c["box"] = box;
                    cells.push_back(c);
                }
            }
            out["cells"] = cells;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << rs.name() << " cells per dimension:";
        for (auto v : fv) std::cout << " " << v;
        std::cout << "\n";
        if (list) {
            for (int d = 0; d <= cc.top_degree(); ++d)
                for (const auto& cell : cc.basis(d))
                    std::cout << "dim " << d << "  (" << cell.diagram.text() << ", "
                              << W.word_string(cell.coset_rep) << ")\n";
        }
    }
    return 0;
}

int run_classify(const std::string& type, const std::string& chamber, const std::string& point,
                 const Config& cfg, bool as_json) {
    auto rs = RootSystem::parse(type, cfg);
    auto W = WeylGroup::enumerate(rs, cfg);
    ChartPoint p;
    p.chamber = W.parse_word(chamber);
    p.coords = parse_doubles(point);
    if (static_cast<int>(p.coords.size()) != rs.rank())
        throw Error("point has " + std::to_string(p.coords.size()) + " coordinates, expected " +
                    std::to_string(rs.rank()));
    auto diagram = classify_point(p);
    auto canonical = canonicalize_cell(W, p.chamber, diagram);
    if (as_json) {
        json out;
        out["schema"] = "1";
        out["type"] = rs.name();
        out["chamber"] = W.word_string(p.chamber);
        out["point"] = p.coords;
        out["diagram"] = diagram.text();
        out["canonical"] = {{"diagram", canonical.diagram.text()},
                            {"chamber", W.word_string(canonical.chamber)}};
        json box = json::array();
        for (auto f : chart_image(diagram)) box.push_back(box_factor_text(f));
        out["box"] = box;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "(" << diagram.text() << ", " << W.word_string(p.chamber) << ")  canonical ("
                  << canonical.diagram.text() << ", " << W.word_string(canonical.chamber)
                  << ")\n";
    }
    return 0;
}

int run_homology(const std::string& type, const Config& cfg, bool as_json, int character_degree,
                 const std::string& export_prefix) {
    auto rs = RootSystem::parse(type, cfg);
    auto W = WeylGroup::enumerate(rs, cfg);
    auto cc = ChainComplex::build(rs, W);

    if (!export_prefix.empty()) {
        for (int d = 1; d <= cc.top_degree(); ++d) {
            std::ofstream f(export_prefix + ".d" + std::to_string(d) + ".txt");
            const auto& m = cc.boundary(d);
            std::vector<std::tuple<int, int, long long>> trips;
            for (int c = 0; c < m.cols; ++c)
                for (auto& [r, v] : m.col_entries[c]) trips.emplace_back(r, c, v);
            std::sort(trips.begin(), trips.end());
            for (auto& [r, c, v] : trips) f << r << " " << c << " " << v << "\n";
        }
    }

    auto groups = homology(cc);
    auto fv = cc.f_vector();
    if (as_json) {
        json out;
        out["schema"] = "1";
        out["type"] = rs.name();
        out["dims"] = fv;
        json betti = json::array(), torsion = json::array();
        for (const auto& g : groups) {
            betti.push_back(g.betti);
            torsion.push_back(torsion_json(g.torsion));
        }
        out["betti"] = betti;
        out["torsion"] = torsion;
        out["euler"] = cc.euler_characteristic();
        if (character_degree >= 0) {
            auto ch = rational_character(cc, character_degree);
            json cj;
            cj["degree"] = ch.degree;
            cj["dimension"] = ch.dimension;
            json classes = json::array();
            for (std::size_t k = 0; k < ch.classes.size(); ++k) {
                json c;
                c["representative"] = W.word_string(ch.classes[k].representative);
                c["size"] = ch.classes[k].size;
                c["element_order"] = ch.classes[k].element_order;
                c["trace"] = ch.traces[k].str();
                classes.push_back(c);
            }
            cj["classes"] = classes;
            out["character"] = cj;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << rs.name() << ": dims";
        for (auto v : fv) std::cout << " " << v;
        std::cout << ", euler " << cc.euler_characteristic() << "\n";
        for (const auto& g : groups) {
            std::cout << "H_" << g.degree <<" = ";
            bool first = true;
            if (g.betti > 0) {
                std::cout << "Z";
                if (g.betti > 1) std::cout << "^" << g.betti;
                first = false;
            }
            for (const auto& f : g.torsion) {
                if (!first) std::cout << " + ";
                std::cout << "Z/" << f.str();
                first = false;
            }
            if (first) std::cout << "0";
            std::cout << "\n";
        }
        if (character_degree >= 0) {
            auto ch = rational_character(cc, character_degree);
            std::cout << "H_" << character_degree << "(Q) dimension " << ch.dimension
                      << ", traces per class:";
            for (std::size_t k = 0; k < ch.classes.size(); ++k)
                std::cout << " [" << W.word_string(ch.classes[k].representative) << "] "
                          << ch.traces[k].str();
            std::cout << "\n";
        }
    }
    return 0;
}

int run_verify(const std::string& type, const Config& cfg, bool all, bool d2, bool equiv,
               bool dims, bool coxeter, bool topcycle, bool homology_checks) {
    auto rs = RootSystem::parse(type, cfg);
    auto W = WeylGroup::enumerate(rs, cfg);
    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << rs.name() << " " << name << "\n";
        ok = ok && pass;
    };
    if (all) d2 = equiv = dims = coxeter = topcycle = homology_checks = true;
    if (!(d2 || equiv || dims || coxeter || topcycle || homology_checks))
        d2 = equiv = dims = coxeter = topcycle = true;

    if (coxeter) {
        bool pass = true;
        for (std::uint32_t mask = 1; mask < (1u << rs.rank()); ++mask) {
            auto rep = verify_coxeter(rs, mask);
            if (!rep.ok) {
                pass = false;
                std::cerr << "coxeter failure: " << rep.failure << "\n";
            }
        }
        report("coxeter relations on oriented diagrams", pass);
    }

    if (d2 || equiv || dims || topcycle || homology_checks) {
        auto cc = ChainComplex::build(rs, W);
        if (d2) report("d o d = 0", verify_d_squared(cc));
        if (dims) {
            bool pass = true;
            for (int k = 0; k <= rs.rank(); ++k) {
                long long expected = 0;
                for (std::uint32_t mask = 0; mask < (1u << rs.rank()); ++mask) {
                    int pc = 0;
                    for (int i = 0; i < rs.rank(); ++i) pc += (mask >> i) & 1;
                    if (pc != k) continue;
                    expected += (1LL << k) *
                                static_cast<long long>(W.cosets(mask).num_cosets());
                }
                if (expected != cc.dim(rs.rank() - k)) pass = false;
            }
            report("dim M_{l-k} = sum 2^k [W:W_S]", pass);
        }
        if (equiv) report("boundary W-equivariance", verify_equivariance(cc));
        if (topcycle) {
            auto [c, dc] = top_cycle(cc);
            bool even = true;
            for (auto& [idx, v] : dc.coeffs) even = even && (v % 2 == 0);
            bool pass = even;
            if (rs.rank() >= 2) pass = pass && !dc.coeffs.empty();
            else pass = pass && dc.coeffs.empty();
            report("top cycle boundary (even, 2*c_{l-1})", pass);
        }
        if (homology_checks) {
            auto groups = todatopo::homology(cc);
            long long alt = 0;
            for (const auto& g : groups) alt += (g.degree % 2 == 0 ? 1 : -1) * g.betti;
            bool pass = alt == cc.euler_characteristic();
            pass = pass && groups[0].betti == 1 && groups[0].torsion.empty();
            if (rs.rank() >= 2)
                pass = pass && groups[rs.rank()].betti == 0 && groups[rs.rank()].torsion.empty();
            else
                pass = pass && groups[rs.rank()].betti == 1;
            report("homology (euler = alternating betti, H_0 = Z, H_l)", pass);
        }
    }
    return ok ? 0 : 1;
}

int run_toda(const std::string& type, const std::string& signs, const std::string& a0,
             const std::string& b0, double t_end, double tol, int resample, const Config& cfg,
             bool as_json, bool as_csv) {
    auto rs = RootSystem::parse(type, cfg);
    TodaState s0;
    s0.t = 0.0;
    s0.a = parse_doubles(a0);
    s0.b = parse_doubles(b0);
    s0.epsilon = parse_signs(signs);
    IntegrateOptions opt;
    opt.tol = tol;
    auto traj = integrate(rs, s0, t_end, opt);

    double t_last = traj.samples.back().t;
    std::vector<TrajectorySample> rows;
    if (resample > 0) {
        for (int k = 0; k <= resample; ++k) {
            double t = s0.t + (t_last - s0.t) * (static_cast<double>(k) / resample);
            rows.push_back(traj.at(t));
        }
    } else {
        rows = traj.samples;
    }

    if (as_csv) {
        std::cout << "t";
        for (int i = 1; i <= rs.rank(); ++i) std::cout << ",a" << i;
        for (int i = 1; i <= rs.rank(); ++i) std::cout << ",b" << i;
        std::cout << "\n";
        for (const auto& s : rows) {
            std::cout << fmt_double(s.t);
            for (double v : s.a) std::cout << "," << fmt_double(v);
            for (double v : s.b) std::cout << "," << fmt_double(v);
            std::cout << "\n";
        }
        for (const auto& ev : traj.events)
            std::cerr << "blow-up: b" << ev.index + 1 << " at t* = " << fmt_double(ev.t_star)
                      << "\n";
        return 0;
    }
    json out;
    out["schema"] = "1";
    out["type"] = rs.name();
    json sj = json::array();
    for (int e : s0.epsilon) sj.push_back(e);
    out["signs"] = sj;
    out["t_start"] = s0.t;
    out["t_end"] = t_end;
    out["tol"] = tol;
    out["reached_t_end"] = traj.reached_t_end;
    json samples = json::array();
    for (const auto& s : rows) {
        json row;
        row["t"] = s.t;
        row["a"] = s.a;
        row["b"] = s.b;
        samples.push_back(row);
    }
    out["samples"] = samples;
    json events = json::array();
    for (const auto& ev : traj.events) {
        json e;
        e["index"] = ev.index + 1;
        e["t_star"] = ev.t_star;
        json sa = json::array();
        for (int s : ev.signs_after) sa.push_back(s);
        e["signs_after"] = sa;
        events.push_back(e);
    }
    out["events"] = events;
    if (traj.invariant_drift)
        out["invariant_drift"] = *traj.invariant_drift;
    else
        out["invariant_drift"] = nullptr;
    out["initial_invariants"] = traj.initial_invariants;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cell complexes, exact homology and Toda flows for compactified split Cartan subgroups"};
    app.require_subcommand(1);

    Config cfg;
    app.add_option("--rank-cap", cfg.rank_cap, "maximum admissible rank")->capture_default_str();
    app.add_option("--weyl-cap", cfg.weyl_cap, "maximum admissible Weyl group order")
        ->capture_default_str();

    std::string type, chamber, point, signs, a0, b0, export_prefix;
    bool as_json = false, as_csv = false, list = false;
    bool all = false, d2 = false, equiv = false, dims = false, coxeter = false, topcycle = false,
         hom = false;
    int character_degree = -1, resample = 0;
    double t_end = 10.0, tol = 1e-10;

    auto* rootsys = app.add_subcommand("rootsys", "root system utilities");
    auto* info = rootsys->add_subcommand("info", "Cartan matrix and Weyl group order");
    info->add_option("--type", type, "type, e.g. A2")->required();
    info->add_flag("--json", as_json, "JSON output");

    auto* cells = app.add_subcommand("cells", "canonical cells per dimension");
    cells->add_option("--type", type)->required();
    cells->add_flag("--list", list, "list every canonical cell with its chart box");
    cells->add_flag("--json", as_json);

    auto* classify = app.add_subcommand("classify", "classify a chart point");
    classify->add_option("--type", type)->required();
    classify->add_option("--chamber", chamber, "Weyl word, e.g. \"s1*s2\" or \"e\"")
        ->default_val("e");
    classify->add_option("--point", point, "comma-separated coordinates in [-1,1]")->required();
    classify->add_flag("--json", as_json);

    auto* hcmd = app.add_subcommand("homology", "integral homology of the cell complex");
    hcmd->add_option("--type", type)->required();
    hcmd->add_flag("--json", as_json);
    hcmd->add_option("--character", character_degree,
                     "also compute the rational character of H_k(Q)");
    hcmd->add_option("--export-matrices", export_prefix,
                     "write boundary matrices as 'row col value' triplet files");

    auto* vcmd = app.add_subcommand("verify", "machine verification suites");
    vcmd->add_option("--type", type)->required();
    vcmd->add_flag("--all", all, "run every check");
    vcmd->add_flag("--d-squared", d2);
    vcmd->add_flag("--equivariance", equiv);
    vcmd->add_flag("--dims", dims);
    vcmd->add_flag("--coxeter", coxeter);
    vcmd->add_flag("--top-cycle", topcycle);
    vcmd->add_flag("--homology", hom);

    auto* toda = app.add_subcommand("toda", "Toda lattice");
    auto* sim = toda->add_subcommand("simulate", "integrate the (a,b) system");
    sim->add_option("--type", type)->required();
    sim->add_option("--signs", signs, "epsilon vector, e.g. \"+-\"")->required();
    sim->add_option("--a", a0, "initial a, comma separated")->required();
    sim->add_option("--b", b0, "initial b, comma separated")->required();
    sim->add_option("--t-end", t_end)->capture_default_str();
    sim->add_option("--tol", tol)->capture_default_str();
    sim->add_option("--samples", resample, "resample output on a uniform grid (0 = raw steps)")
        ->capture_default_str();
    sim->add_flag("--json", as_json);
    sim->add_flag("--csv", as_csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (info->parsed()) return run_rootsys_info(type, cfg, as_json);
        if (cells->parsed()) return run_cells(type, cfg, list, as_json);
        if (classify->parsed()) return run_classify(type, chamber, point, cfg, as_json);
        if (hcmd->parsed()) return run_homology(type, cfg, as_json, character_degree, export_prefix);
        if (vcmd->parsed())
            return run_verify(type, cfg, all, d2, equiv, dims, coxeter, topcycle, hom);
        if (sim->parsed())
            return run_toda(type, signs, a0, b0, t_end, tol, resample, cfg, as_json, as_csv);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
