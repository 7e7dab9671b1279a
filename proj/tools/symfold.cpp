#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symfold/backtrack.hpp"
#include "symfold/bench.hpp"
#include "symfold/oracle.hpp"
#include "symfold/report.hpp"
#include "symfold/snmfe_dp.hpp"
#include "symfold/symmetry.hpp"

using namespace symfold;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kParse = 1, kInfeasible = 2, kInternal = 3 };

struct RunConfig {
    std::string input;
    std::string params;
    std::string format = "text";
    std::string ordering;
    std::optional<int> min_hairpin;
    bool wobble = false;
    bool low_mem = false;
    bool trace = false;
    bool no_merge = false;
    std::uint64_t seed = 1;
    std::string dump_dp;
    std::string load_dp;
    std::vector<int> sizes{64, 128, 256};
    int repeats = 3;
    int max_n = 18;
};

struct Session {
    std::shared_ptr<const StrandSystem> system;
    std::unique_ptr<LinearEnergyModel> model;
    std::vector<Ordering> orderings;
};

std::unique_ptr<LinearEnergyModel> make_model(const RunConfig& cfg) {
    LinearParams params = cfg.params.empty() ? LinearParams{} : load_params(cfg.params);
    if (cfg.min_hairpin) {
        if (*cfg.min_hairpin < 0) throw ParseError("--min-hairpin must be non-negative");
        params.min_hairpin = *cfg.min_hairpin;
    }
    return std::make_unique<LinearEnergyModel>(params, PairingRule{cfg.wobble});
}

Session open_session(const RunConfig& cfg) {
    Session s;
    SystemOptions options;
    options.merge_equal_sequences = !cfg.no_merge;
    s.system = std::make_shared<const StrandSystem>(load_system(cfg.input, options));
    s.model = make_model(cfg);
    if (cfg.ordering.empty()) {
        s.orderings = circular_permutations(s.system);
    } else {
        s.orderings.push_back(parse_ordering(s.system, cfg.ordering));
    }
    return s;
}

bool json_out(const RunConfig& cfg) { return cfg.format == "json"; }

int cmd_mfe(const RunConfig& cfg) {
    auto s = open_session(cfg);
    SearchOptions options;
    options.low_mem = cfg.low_mem;
    options.audit = cfg.trace;

    SystemMfe result;
    if (!cfg.load_dp.empty()) {
        if (s.orderings.size() != 1) throw ParseError("--load-dp needs a single ordering (use --ordering)");
        auto ordering = std::make_shared<const Ordering>(s.orderings.front());
        auto dp = load_dp(cfg.load_dp, ordering, dp_key(*ordering, *s.model));
        result.per_ordering.push_back(true_mfe(dp, *s.model, options));
        result.feasible.push_back(true);
    } else {
        result = mfe_orderings(s.orderings, *s.model, options);
    }
    const auto& best = result.result();

    if (json_out(cfg)) {
        json out = mfe_json(best, *s.model);
        out["command"] = "mfe";
        auto per = json::array();
        for (std::size_t k = 0; k < result.per_ordering.size(); ++k) {
            const bool feasible = result.feasible[k];
            json entry = {{"ordering", s.orderings[k].label()}, {"feasible", feasible}};
            if (feasible) {
                const auto& r = result.per_ordering[k];
                entry["energy"] = r.energy;
                entry["symmetry"] = r.symmetry;
                entry["snmfe"] = r.snmfe;
                if (cfg.trace) entry["trace"] = trace_json(r.stats);
            }
            per.push_back(entry);
        }
        out["orderings"] = per;
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    std::cout << mfe_text(best, *s.model);
    if (cfg.trace) {
        for (std::size_t k = 0; k < result.per_ordering.size(); ++k) {
            if (!result.feasible[k]) continue;
            json t = trace_json(result.per_ordering[k].stats);
            t["ordering"] = s.orderings[k].label();
            std::cout << "trace        " << t.dump() << '\n';
        }
    }
    return kOk;
}

int cmd_snmfe(const RunConfig& cfg) {
    auto s = open_session(cfg);
    if (!cfg.dump_dp.empty() && s.orderings.size() != 1) {
        throw ParseError("--dump-dp needs a single ordering (use --ordering)");
    }
    auto per = json::array();
    Energy best = kInf;
    std::ostringstream text;
    for (const auto& o : s.orderings) {
        auto ordering = std::make_shared<const Ordering>(o);
        FillOptions fill_options;
        fill_options.keep_tensors = !cfg.dump_dp.empty();
        auto dp = fill(ordering, *s.model, fill_options);
        const Energy e = snmfe(dp);
        if (!cfg.dump_dp.empty()) save_dp(dp, cfg.dump_dp, dp_key(o, *s.model));
        json entry = {{"ordering", o.label()}, {"feasible", is_finite(e)}};
        if (is_finite(e)) entry["snmfe"] = e;
        per.push_back(entry);
        text << o.label() << '\t' << (is_finite(e) ? format_centi(e) : std::string("infeasible")) << '\n';
        best = std::min(best, e);
    }
    if (!is_finite(best)) throw InfeasibleError("no ordering admits a connected structure");
    if (json_out(cfg)) {
        std::cout << json{{"command", "snmfe"}, {"snmfe", best}, {"orderings", per}}.dump(2) << '\n';
    } else {
        std::cout << text.str() << "snmfe\t" << format_centi(best) << '\n';
    }
    return kOk;
}

int cmd_cuts(const RunConfig& cfg) {
    auto s = open_session(cfg);
    auto per = json::array();
    for (const auto& o : s.orderings) per.push_back(cuts_json(o));
    if (json_out(cfg)) {
        std::cout << json{{"command", "cuts"}, {"orderings", per}}.dump(2) << '\n';
        return kOk;
    }
    for (const auto& entry : per) {
        std::cout << entry["ordering"].get<std::string>() << "\tv=" << entry["max_degree"] << "\tcuts=" << entry["count"]
                  << '\n';
        for (const auto& cut : entry["cuts"]) std::cout << "  r=" << cut["r"] << " bonds=" << cut["bonds"].dump() << '\n';
    }
    return kOk;
}

int cmd_bound(const RunConfig& cfg) {
    auto s = open_session(cfg);
    auto per = json::array();
    for (const auto& o : s.orderings) per.push_back(bound_json(o, s.model->pairing()));
    if (json_out(cfg)) {
        std::cout << json{{"command", "bound"}, {"orderings", per}}.dump(2) << '\n';
        return kOk;
    }
    for (const auto& entry : per) {
        std::cout << entry["ordering"].get<std::string>() << "\tU=" << entry["bound"] << " (cuts "
                  << entry["cut_term"] << ", centres " << entry["internal_term"] << ")\n";
    }
    return kOk;
}

int cmd_oracle(const RunConfig& cfg) {
    auto s = open_session(cfg);
    if (cfg.max_n < 1 || cfg.max_n > kOracleMaxN) {
        throw ParseError("--max-n must lie in [1, " + std::to_string(kOracleMaxN) + "]");
    }
    EnumerationConfig ec;
    ec.max_n = cfg.max_n;
    ec.min_hairpin = s.model->params().min_hairpin;
    ec.rule = s.model->pairing();
    if (s.system->total_length() > ec.max_n) {
        throw ParseError("oracle limited to N <= " + std::to_string(ec.max_n) + " (use --max-n)");
    }
    const double kbt = s.model->kbt();
    bool any = false;
    double best = 0.0;
    std::string best_ordering;
    std::string best_structure;
    for (const auto& o : s.orderings) {
        auto ordering = std::make_shared<const Ordering>(o);
        enumerate_structures(o, ec, [&](const PairList& pairs) {
            const Energy naive = oracle_naive_energy(o, pairs, *s.model);
            const int r = oracle_symmetry(o, pairs);
            const double energy = naive + symmetry_penalty(r, kbt);
            const std::string db = serialize_dotbracket(SecondaryStructure(ordering, pairs));
            if (json_out(cfg)) {
                std::cout << json{{"ordering", o.label()}, {"structure", db}, {"naive", naive}, {"symmetry", r},
                                  {"energy", energy}}
                                 .dump()
                          << '\n';
            } else {
                std::cout << o.label() << '\t' << db << '\t' << format_centi(naive) << "\tR=" << r << '\n';
            }
            if (!any || energy < best) {
                best = energy;
                best_ordering = o.label();
                best_structure = db;
            }
            any = true;
        });
    }
    if (!any) throw InfeasibleError("no ordering admits a connected structure");
    if (json_out(cfg)) {
        std::cout << json{{"summary", true}, {"ordering", best_ordering}, {"structure", best_structure},
                          {"energy", best}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "mfe\t" << best_ordering << '\t' << best_structure << '\t' << format_centi(best) << '\n';
    }
    return kOk;
}

int cmd_bench(const RunConfig& cfg) {
    for (int n : cfg.sizes) {
        if (n < 1) throw ParseError("--sizes entries must be positive");
    }
    auto model = make_model(cfg);
    write_bench_csv(std::cout, run_bench(cfg.sizes, cfg.seed, *model, cfg.repeats));
    return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("input", cfg.input, "Strand file: <name> <sequence> <repetition> per line")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--params", cfg.params, "Energy parameter file (key=value)")->check(CLI::ExistingFile);
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--ordering", cfg.ordering, "Restrict to one circular ordering, e.g. XYX or X,Y,X");
    sub->add_option("--min-hairpin", cfg.min_hairpin, "Minimum unpaired bases in a hairpin");
    sub->add_flag("--wobble", cfg.wobble, "Allow G-T / G-U pairs");
    sub->add_flag("--no-merge", cfg.no_merge, "Keep equal sequences under different names apart");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Multistrand minimum free energy with rotational symmetry correction"};
    app.require_subcommand(1);

    auto* mfe = app.add_subcommand("mfe", "True minimum free energy over all orderings");
    add_common(mfe, cfg);
    mfe->add_flag("--low-mem", cfg.low_mem, "Keep a single bounded candidate list");
    mfe->add_flag("--trace", cfg.trace, "Emit search statistics as JSON");
    mfe->add_option("--load-dp", cfg.load_dp, "Reuse matrices written by snmfe --dump-dp")->check(CLI::ExistingFile);

    auto* sn = app.add_subcommand("snmfe", "Symmetry-naive minimum free energy per ordering");
    add_common(sn, cfg);
    sn->add_option("--dump-dp", cfg.dump_dp, "Write the filled matrices for a single ordering");

    auto* cuts = app.add_subcommand("cuts", "Symmetric backbone cuts per ordering");
    add_common(cuts, cfg);

    auto* bound = app.add_subcommand("bound", "Cap on scanned symmetric structures per ordering");
    add_common(bound, cfg);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive enumeration for small inputs");
    add_common(oracle, cfg);
    oracle->add_option("--max-n", cfg.max_n, "Largest total length accepted");

    auto* bench = app.add_subcommand("bench", "Fill and search timings as CSV");
    bench->add_option("--sizes", cfg.sizes, "Comma-separated strand lengths")->delimiter(',');
    bench->add_option("--seed", cfg.seed, "Seed for the random sequences");
    bench->add_option("--repeats", cfg.repeats, "Runs per size; the best time is kept")->check(CLI::PositiveNumber);
    bench->add_option("--params", cfg.params, "Energy parameter file (key=value)")->check(CLI::ExistingFile);
    bench->add_option("--min-hairpin", cfg.min_hairpin, "Minimum unpaired bases in a hairpin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    try {
        if (*mfe) return cmd_mfe(cfg);
        if (*sn) return cmd_snmfe(cfg);
        if (*cuts) return cmd_cuts(cfg);
        if (*bound) return cmd_bound(cfg);
        if (*oracle) return cmd_oracle(cfg);
        if (*bench) return cmd_bench(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kParse;
}
