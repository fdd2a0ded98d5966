// Command-line front end: exact lattice-point counting and symbolic
// counting functions for polyhedra { x >= 0 : A x = y }.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latcount/latcount.hpp"

using namespace latcount;

namespace {

constexpr std::uint64_t kCliMasterSeed = 20260809;

struct SeedPack {
    std::uint64_t master;
    std::uint64_t chamber() const { return master * 2 + 1; }
    std::uint64_t direction() const { return master * 3 + 5; }
    std::uint64_t regular() const { return master * 5 + 7; }
    std::uint64_t sampling() const { return master * 7 + 11; }
};

IntVec parse_y(const std::string& text, std::size_t m) {
    IntVec y;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            y.push_back(Int(part));
        } catch (const std::runtime_error&) {
            throw ParseError("malformed integer '" + part + "' in --y");
        }
    }
    if (y.size() != m)
        throw ParseError("--y needs " + std::to_string(m) + " comma-separated integers");
    return y;
}

RatVec parse_z(const std::string& text, std::size_t n) {
    RatVec z;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) z.push_back(parse_rat(part));
    if (z.size() != n)
        throw ParseError("--z needs " + std::to_string(n) + " comma-separated rationals");
    return z;
}

nlohmann::json json_int(const Int& v) {
    return detail::int_to_json(v);
}

nlohmann::json json_vec(const IntVec& v) {
    return detail::vec_to_json(v);
}

nlohmann::json sum_to_json(const RationalTermSum& sum) {
    nlohmann::json terms = nlohmann::json::array();
    for (const RationalTerm& t : sum.terms) {
        for (const auto& [e, c] : t.numerator.terms()) {
            nlohmann::json jt;
            jt["coef"] = format_rat(c);
            jt["exp"] = json_vec(e);
            nlohmann::json den = nlohmann::json::array();
            for (const GeometricFactor& f : t.denominator) {
                nlohmann::json jf;
                jf["exp"] = json_vec(f.exponent);
                jf["mult"] = f.mult;
                den.push_back(jf);
            }
            jt["den"] = den;
            terms.push_back(jt);
        }
    }
    return nlohmann::json{{"terms", terms}};
}

void require_bounded(const IntMatrix& a) {
    if (!is_bounded(a))
        throw DomainError("instance has a nonzero recession direction; counts are infinite");
}

int run_bases(const Instance& inst, bool as_json) {
    auto bases = enumerate_bases(inst.a);
    if (as_json) {
        nlohmann::json out;
        out["bases"] = nlohmann::json::array();
        for (const Basis& b : bases) {
            nlohmann::json jb;
            jb["sigma"] = b.sigma;
            jb["mu"] = b.mu.str();
            nlohmann::json nus = nlohmann::json::array();
            for (int k : b.complement) {
                nlohmann::json jn;
                jn["k"] = k;
                jn["nu"] = nu_order(b, k, inst.a).str();
                nus.push_back(jn);
            }
            jb["nu"] = nus;
            out["bases"].push_back(jb);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const Basis& b : bases) {
        std::cout << "sigma=[";
        for (std::size_t i = 0; i < b.sigma.size(); ++i)
            std::cout << (i ? "," : "") << b.sigma[i];
        std::cout << "] mu=" << b.mu;
        for (int k : b.complement) std::cout << " nu[" << k << "]=" << nu_order(b, k, inst.a);
        std::cout << "\n";
    }
    return 0;
}

enum class CountMode { Primal, Full, Dual, Table };

int run_count(const Instance& inst, const std::string& ytext, CountMode mode,
              const std::string& table_path, const std::string& approx,
              std::uint64_t budget, const SeedPack& seeds, bool as_json) {
    require_bounded(inst.a);
    IntVec y = parse_y(ytext, inst.a.rows());

    RationalTermSum sum;
    switch (mode) {
        case CountMode::Primal:
            sum = h_primal(inst.a, y, Variant::Starred, seeds.chamber());
            break;
        case CountMode::Full:
            sum = h_primal(inst.a, y, Variant::Full, seeds.chamber());
            break;
        case CountMode::Dual: {
            DualShiftTable table(inst.a, budget, seeds.regular());
            sum = h_dual(table, y);
            break;
        }
        case CountMode::Table: {
            ChamberTable table = load_chamber_table(table_path);
            if (!(table.a == inst.a))
                throw DomainError("table file was built for a different matrix");
            sum = h_from_table(table, y);
            break;
        }
    }

    Int count = approx.empty() ? count_from_sum(sum, seeds.direction())
                               : count_approx(sum, parse_rat(approx), seeds.direction());
    if (as_json) {
        nlohmann::json out;
        out["count"] = json_int(count);
        if (!approx.empty()) out["certified"] = false;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << count << "\n";
    }
    return 0;
}

int run_hfunc(const Instance& inst, const std::string& ytext, const std::string& ztext,
              bool symbolic, CountMode mode, std::uint64_t budget, const SeedPack& seeds,
              bool as_json) {
    IntVec y = parse_y(ytext, inst.a.rows());
    RationalTermSum sum;
    switch (mode) {
        case CountMode::Primal:
            sum = h_primal(inst.a, y, Variant::Starred, seeds.chamber());
            break;
        case CountMode::Full:
            sum = h_primal(inst.a, y, Variant::Full, seeds.chamber());
            break;
        case CountMode::Dual: {
            DualShiftTable table(inst.a, budget, seeds.regular());
            sum = h_dual(table, y);
            break;
        }
        case CountMode::Table:
            throw DomainError("hfunc does not take a table file");
    }

    if (symbolic) {
        if (as_json)
            std::cout << sum_to_json(sum).dump(2) << "\n";
        else
            std::cout << to_text(sum);
        return 0;
    }
    RatVec z = parse_z(ztext, inst.a.cols());
    Rat value = evaluate_at(sum, z);
    if (as_json)
        std::cout << nlohmann::json{{"value", format_rat(value)}}.dump() << "\n";
    else
        std::cout << format_rat(value) << "\n";
    return 0;
}

int run_table(const Instance& inst, const std::string& ytext, const std::string& out_path,
              bool full, const SeedPack& seeds, bool as_json) {
    IntVec y = parse_y(ytext, inst.a.rows());
    auto cb = chamber_bases(inst.a, y, seeds.chamber());
    if (cb.bases.empty())
        throw DomainError("y lies outside the column cone; no chamber table to build");
    ChamberTable table =
        build_chamber_table(inst.a, cb, full ? Variant::Full : Variant::Starred);
    save_chamber_table(table, out_path);
    std::size_t entries = 0;
    for (const auto& tb : table.bases) entries += tb.entries.size();
    if (as_json) {
        nlohmann::json out;
        out["written"] = out_path;
        out["bases"] = table.bases.size();
        out["entries"] = entries;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "wrote chamber table to " << out_path << " (bases: " << table.bases.size()
                  << ", stored numerators: " << entries << ")\n";
    }
    return 0;
}

int run_expand(const Instance& inst, const std::string& ztext, long long box,
               std::uint64_t budget, const SeedPack& seeds, bool as_json) {
    RatVec z = parse_z(ztext, inst.a.cols());
    ExpansionReport rep = verify_expansion(inst.a, z, box, budget, seeds.regular());
    if (as_json) {
        nlohmann::json out;
        out["ok"] = rep.ok;
        out["checked"] = rep.checked;
        out["mismatched"] = rep.mismatched;
        if (rep.first_mismatch) out["first_mismatch"] = json_vec(*rep.first_mismatch);
        std::cout << out.dump() << "\n";
    } else {
        std::cout << report_text(rep);
    }
    return rep.ok ? 0 : 4;
}

int run_oracle(const Instance& inst, const std::string& ytext, bool as_json) {
    require_bounded(inst.a);
    IntVec y = parse_y(ytext, inst.a.rows());
    auto pts = enumerate_points(inst.a, y);
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const IntVec& p : pts) arr.push_back(json_vec(p));
        std::cout << nlohmann::json{{"points", arr}}.dump() << "\n";
    } else {
        for (const IntVec& p : pts) std::cout << format_int_vec(p) << "\n";
    }
    return 0;
}

int run_verify(const Instance& inst, int samples, std::uint64_t budget, const SeedPack& seeds,
               bool as_json) {
    require_bounded(inst.a);
    const IntMatrix& a = inst.a;
    Rng rng(seeds.sampling());
    DualShiftTable dual_table(a, budget, seeds.regular());

    int ok_primal = 0, ok_full = 0, ok_table = 0, ok_dual = 0;
    std::vector<std::string> mismatches;
    for (int s = 0; s < samples; ++s) {
        IntVec x(a.cols());
        for (Int& xi : x) xi = rng.uniform(0, 6);
        IntVec y = a.mul(x);

        Int expected(static_cast<long long>(enumerate_points(a, y).size()));
        auto tally = [&](const char* name, int& counter, const Int& got) {
            if (got == expected) {
                ++counter;
            } else {
                mismatches.push_back(std::string(name) + " y=" + format_int_vec(y) + " got " +
                                     got.str() + " expected " + expected.str());
            }
        };
        tally("primal", ok_primal,
              count_from_sum(h_primal(a, y, Variant::Starred, seeds.chamber()),
                             seeds.direction()));
        tally("full", ok_full,
              count_from_sum(h_primal(a, y, Variant::Full, seeds.chamber()), seeds.direction()));
        auto cb = chamber_bases(a, y, seeds.chamber());
        if (cb.bases.empty()) {
            tally("table", ok_table, Int(0));
        } else {
            tally("table", ok_table,
                  count_from_sum(h_from_table(build_chamber_table(a, cb), y), seeds.direction()));
        }
        tally("dual", ok_dual, count_from_sum(h_dual(dual_table, y), seeds.direction()));
    }

    bool all_ok = mismatches.empty();
    if (as_json) {
        nlohmann::json out;
        out["samples"] = samples;
        out["primal"] = ok_primal;
        out["full"] = ok_full;
        out["table"] = ok_table;
        out["dual"] = ok_dual;
        out["mismatches"] = mismatches;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "samples: " << samples << "\n";
        std::cout << "primal: " << ok_primal << "/" << samples << "\n";
        std::cout << "full: " << ok_full << "/" << samples << "\n";
        std::cout << "table: " << ok_table << "/" << samples << "\n";
        std::cout << "dual: " << ok_dual << "/" << samples << "\n";
        for (const std::string& msg : mismatches) std::cout << "mismatch: " << msg << "\n";
        std::cout << (all_ok ? "all pipelines agree with the oracle"
                             : "pipeline disagreement detected")
                  << "\n";
    }
    return all_ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice-point counting for { x >= 0 : A x = y }"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = kCliMasterSeed;
    std::uint64_t budget = kDefaultDualBudget;
    app.add_flag("--json", as_json, "emit JSON instead of plain text");
    app.add_option("--seed", seed, "seed for every randomized choice");
    app.add_option("--budget", budget, "entry budget for dual shift tables");

    std::string instance_path, ytext, ztext, table_path, out_path, approx;
    bool symbolic = false, use_dual = false, use_full = false;
    int samples = 50;
    long long box = 6;

    auto* cmd_bases = app.add_subcommand("bases", "list bases with mu and nu orders");
    cmd_bases->add_option("instance", instance_path)->required();

    auto* cmd_count = app.add_subcommand("count", "exact number of lattice points");
    cmd_count->add_option("instance", instance_path)->required();
    cmd_count->add_option("--y", ytext, "right-hand side, comma separated")->required();
    cmd_count->add_flag("--dual", use_dual, "use the generating-function formula");
    cmd_count->add_flag("--full", use_full, "use mu-sized enumeration ranges");
    cmd_count->add_option("--table", table_path, "use a persisted chamber table");
    cmd_count->add_option("--approx", approx,
                          "non-certified: evaluate near z = 1 with eps and round");

    auto* cmd_hfunc = app.add_subcommand("hfunc", "counting function value or term dump");
    cmd_hfunc->add_option("instance", instance_path)->required();
    cmd_hfunc->add_option("--y", ytext)->required();
    cmd_hfunc->add_option("--z", ztext, "evaluation point, rationals p/q");
    cmd_hfunc->add_flag("--symbolic", symbolic, "dump the terms instead of evaluating");
    cmd_hfunc->add_flag("--dual", use_dual);
    cmd_hfunc->add_flag("--full", use_full);

    auto* cmd_table = app.add_subcommand("table", "build and persist a chamber table");
    cmd_table->add_option("instance", instance_path)->required();
    cmd_table->add_option("--y", ytext)->required();
    cmd_table->add_option("--out", out_path)->required();
    cmd_table->add_flag("--full", use_full);

    auto* cmd_expand = app.add_subcommand("expand", "verify the expansion coefficients on a box");
    cmd_expand->add_option("instance", instance_path)->required();
    cmd_expand->add_option("--z", ztext)->required();
    cmd_expand->add_option("--box", box, "sup-norm bound of the exponent box");

    auto* cmd_verify = app.add_subcommand("verify", "randomized oracle cross-check");
    cmd_verify->add_option("instance", instance_path)->required();
    cmd_verify->add_option("--samples", samples);

    auto* cmd_oracle = app.add_subcommand("oracle", "enumerate the lattice points");
    cmd_oracle->add_option("instance", instance_path)->required();
    cmd_oracle->add_option("--y", ytext)->required();

    // global flags (--json, --seed, --budget) may follow the subcommand
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    SeedPack seeds{seed};
    try {
        Instance inst = parse_instance(instance_path);
        if (cmd_bases->parsed()) return run_bases(inst, as_json);
        if (cmd_count->parsed()) {
            CountMode mode = CountMode::Primal;
            if (!table_path.empty()) mode = CountMode::Table;
            else if (use_dual) mode = CountMode::Dual;
            else if (use_full) mode = CountMode::Full;
            return run_count(inst, ytext, mode, table_path, approx, budget, seeds, as_json);
        }
        if (cmd_hfunc->parsed()) {
            if (!symbolic && ztext.empty())
                throw ParseError("hfunc needs --z unless --symbolic is given");
            CountMode mode = use_dual ? CountMode::Dual
                                      : (use_full ? CountMode::Full : CountMode::Primal);
            return run_hfunc(inst, ytext, ztext, symbolic, mode, budget, seeds, as_json);
        }
        if (cmd_table->parsed()) return run_table(inst, ytext, out_path, use_full, seeds, as_json);
        if (cmd_expand->parsed()) return run_expand(inst, ztext, box, budget, seeds, as_json);
        if (cmd_verify->parsed()) return run_verify(inst, samples, budget, seeds, as_json);
        if (cmd_oracle->parsed()) return run_oracle(inst, ytext, as_json);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
