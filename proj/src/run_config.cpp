#include "qwtorus/run_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwtorus/dimer.hpp"
#include "qwtorus/dynamics.hpp"
#include "qwtorus/gibbs.hpp"
#include "qwtorus/verification.hpp"

namespace qwtorus::cli {

using json = nlohmann::ordered_json;

ScalarArg ScalarArg::parse(const std::string& s) {
    ScalarArg out;
    out.text = s;
    try {
        out.rational = rat_from_string(s);
        out.exact = true;
        out.value = to_double(out.rational);
        return out;
    } catch (const structural_error&) {
        // fall through to float syntax
    }
    std::size_t pos = 0;
    try {
        out.value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw usage_error("cannot parse scalar '" + s + "' (use p/r for exact, a decimal for float)");
    }
    if (pos != s.size()) throw usage_error("cannot parse scalar '" + s + "'");
    out.exact = false;
    return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

std::uint64_t env_enum_cap() {
    if (const char* v = std::getenv("QWTORUS_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long cap = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && cap > 0) return cap;
    }
    return kDefaultEnumCap;
}

struct RawArgs {
    int L = 0, N = 0, m1 = 0, m2 = -1;
    std::string q, a, mode;
    std::uint64_t seed = 0;
    double t_max = 0;
    std::uint64_t max_events = 0;
    long samples = 10000;
    int threads = 1;
    std::uint64_t cap = 0;
    bool count_only = false;
    int perturb_state = -1;
    std::string init_file, from_file, to_file, events_csv, occupation_json, measure_csv;
};

void add_sector_options(CLI::App* cmd, RawArgs& raw, bool need_m2) {
    cmd->add_option("--L", raw.L, "horizontal period")->required();
    cmd->add_option("--N", raw.N, "vertical period (rows)")->required();
    cmd->add_option("--m1", raw.m1, "particles per row")->required();
    auto* o = cmd->add_option("--m2", raw.m2, "sector winding index");
    if (need_m2) o->required();
}

void add_gibbs_options(CLI::App* cmd, RawArgs& raw) {
    cmd->add_option("--q", raw.q, "deformation in [0,1); p/r = exact, decimal = float")->required();
    cmd->add_option("--a", raw.a, "comma list of N row activities")->required();
    cmd->add_option("--mode", raw.mode, "force arithmetic mode")
        ->check(CLI::IsMember({"rational", "float"}));
}

void finish_gibbs(const RawArgs& raw, RunConfig& rc) {
    rc.q = ScalarArg::parse(raw.q);
    for (const std::string& part : split_commas(raw.a)) rc.a.push_back(ScalarArg::parse(part));
    if (static_cast<int>(rc.a.size()) != rc.N)
        throw usage_error("--a needs exactly N = " + std::to_string(rc.N) + " activities, got " +
                          std::to_string(rc.a.size()));
    const bool exact = rc.q.exact && std::all_of(rc.a.begin(), rc.a.end(),
                                                 [](const ScalarArg& s) { return s.exact; });
    if (raw.mode == "rational") {
        if (!exact)
            throw usage_error("--mode rational requires exact inputs: write q and a as fractions "
                              "(e.g. --q 1/2), decimals are parsed as floats and never converted");
        rc.rational_mode = true;
    } else if (raw.mode == "float") {
        rc.rational_mode = false;
    } else {
        rc.rational_mode = exact;
    }
    if (!(rc.q.value >= 0.0 && rc.q.value < 1.0))
        throw usage_error("--q must lie in [0, 1)");
    for (const ScalarArg& ak : rc.a)
        if (!(ak.value > 0.0)) throw usage_error("--a entries must be positive");
}

void check_sector(const RunConfig& rc, bool need_proper) {
    try {
        if (rc.m2 >= 0) {
            if (need_proper)
                Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
            else
                Sector::checked(rc.L, rc.N, rc.m1, rc.m2);
        } else {
            Sector::checked(rc.L, rc.N, rc.m1, 0);
        }
    } catch (const sector_error& e) {
        throw usage_error(e.what());
    }
}

json params_json(const RunConfig& rc) {
    json p;
    p["L"] = rc.L;
    p["N"] = rc.N;
    p["m1"] = rc.m1;
    if (rc.m2 >= 0) p["m2"] = rc.m2;
    if (!rc.q.text.empty()) {
        p["q"] = rc.q.text;
        json as = json::array();
        for (const auto& ak : rc.a) as.push_back(ak.text);
        p["a"] = as;
        p["mode"] = rc.rational_mode ? "rational" : "float";
    }
    return p;
}

json report_head(const RunConfig& rc) {
    json j;
    j["schema"] = kSchema;
    j["artifact_version"] = kVersion;
    j["command"] = rc.command;
    j["params"] = params_json(rc);
    return j;
}

template <class S>
GibbsParams<S> make_params(const RunConfig& rc);

template <>
GibbsParams<Rat> make_params<Rat>(const RunConfig& rc) {
    std::vector<Rat> a;
    for (const auto& ak : rc.a) a.push_back(ak.rational);
    return GibbsParams<Rat>(rc.q.rational, std::move(a));
}

template <>
GibbsParams<double> make_params<double>(const RunConfig& rc) {
    std::vector<double> a;
    for (const auto& ak : rc.a) a.push_back(ak.value);
    return GibbsParams<double>(rc.q.value, std::move(a));
}

json config_json(const Configuration& c) {
    return json::parse(c.to_json());
}

Configuration load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        Configuration c = Configuration::from_json(ss.str());
        if (!validate(c)) throw usage_error("configuration in '" + path + "' violates interlacing");
        return c;
    } catch (const structural_error& e) {
        throw usage_error("bad configuration file '" + path + "': " + e.what());
    }
}

int run_enumerate(const RunConfig& rc, std::ostream& out) {
    if (rc.m2 >= 0) {
        Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
        std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
        if (rc.count_only) {
            json j = report_head(rc);
            j["sectors"] = json::array({json{{"m2", rc.m2}, {"count", states.size()}}});
            j["total"] = states.size();
            out << j.dump(2) << "\n";
        } else {
            for (const auto& c : states) {
                json line = config_json(c);
                line["m2"] = rc.m2;
                out << line.dump() << "\n";
            }
        }
        return 0;
    }
    SectorCensus census = enumerate_all(rc.L, rc.N, rc.m1, rc.enum_cap);
    if (rc.count_only) {
        json j = report_head(rc);
        json sectors = json::array();
        for (const auto& [m2, v] : census.by_m2)
            sectors.push_back(json{{"m2", m2}, {"count", v.size()}});
        j["sectors"] = sectors;
        j["total"] = census.total();
        out << j.dump(2) << "\n";
    } else {
        for (const auto& [m2, v] : census.by_m2)
            for (const auto& c : v) {
                json line = config_json(c);
                line["m2"] = m2;
                out << line.dump() << "\n";
            }
    }
    return 0;
}

template <class S>
json residual_json(const S& r);

template <>
json residual_json<Rat>(const Rat& r) {
    return rat_to_string(r);
}

template <>
json residual_json<double>(const double& r) {
    return r;
}

template <class S>
int run_stationarity(const RunConfig& rc, std::ostream& out) {
    Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
    GibbsParams<S> params = make_params<S>(rc);
    auto report = check_stationarity<S>(sector, params, rc.enum_cap, rc.threads, rc.perturb_state);

    if (!rc.measure_csv.empty()) {
        if constexpr (std::is_same_v<S, Rat>) {
            std::ofstream csv(rc.measure_csv);
            if (!csv) throw usage_error("cannot write '" + rc.measure_csv + "'");
            write_measure_csv(csv, enumerate_sector(sector, rc.enum_cap), params);
        } else {
            throw usage_error("--measure-csv needs rational mode");
        }
    }

    json j = report_head(rc);
    if (rc.perturb_state >= 0) j["params"]["perturb_state"] = rc.perturb_state;
    j["states"] = report.states;
    j["max_residual"] = residual_json<S>(report.max_abs_residual);
    j["max_residual_float"] = to_double(report.max_abs_residual);
    json bad = json::array();
    for (std::size_t i = 0; i < report.residual.size(); ++i)
        if (!(report.residual[i] == S(0))) {
            json entry;
            entry["state"] = i;
            entry["residual"] = residual_json<S>(report.residual[i]);
            bad.push_back(entry);
        }
    j["nonzero_residual_states"] = bad;
    j["pass"] = report.pass;
    out << j.dump(2) << "\n";
    return report.pass ? 0 : 1;
}

template <class S>
int run_identity(const RunConfig& rc, std::ostream& out) {
    Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
    GibbsParams<S> params = make_params<S>(rc);
    std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
    if (states.empty()) throw usage_error("sector is empty");

    bool eq_pass = true;
    S max_diff(0);
    for (const auto& st : states) {
        S d = s1(st, params) - s2(st, params);
        S ad = d < S(0) ? S(-d) : d;
        if (max_diff < ad) max_diff = ad;
    }
    if constexpr (std::is_same_v<S, Rat>) {
        eq_pass = max_diff == 0;
    } else {
        eq_pass = max_diff < 1e-12;
    }

    // Derivative-term cancellations, exact at the canonical q values.
    std::mt19937_64 rng(rc.seed);
    const Rat qs[] = {Rat(1, 7), Rat(1, 3), Rat(1, 2), Rat(9, 10)};
    long bad_samples = 0;
    for (long i = 0; i < rc.samples; ++i) {
        FrameSample sample = random_frame_sample(rng, 12, qs[i % 4]);
        DerivativeTerms t = derivative_terms(sample);
        if (t.s10 != t.s20 || t.s11 != t.s21) ++bad_samples;
    }

    json j = report_head(rc);
    j["states"] = states.size();
    j["s1_s2_max_diff"] = residual_json<S>(max_diff);
    j["s1_s2_pass"] = eq_pass;
    j["derivative_samples"] = rc.samples;
    j["derivative_seed"] = rc.seed;
    j["derivative_failures"] = bad_samples;
    j["derivative_pass"] = bad_samples == 0;
    j["pass"] = eq_pass && bad_samples == 0;
    out << j.dump(2) << "\n";
    return (eq_pass && bad_samples == 0) ? 0 : 1;
}

template <class S>
int run_balance(const RunConfig& rc, std::ostream& out) {
    Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
    GibbsParams<S> params = make_params<S>(rc);
    std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
    if (states.empty()) throw usage_error("sector is empty");

    long pairs = 0, failures = 0;
    json fail_list = json::array();
    for (std::size_t i = 0; i < states.size(); ++i)
        for (int r = 0; r < rc.N; ++r)
            for (int k = 0; k < rc.m1; ++k) {
                auto chk = check_balance(states[i], {r, k}, params);
                ++pairs;
                if (!chk.equal) {
                    ++failures;
                    if (fail_list.size() < 16)
                        fail_list.push_back(json{{"state", i},
                                                 {"row", r},
                                                 {"idx", k},
                                                 {"lhs", residual_json<S>(chk.lhs)},
                                                 {"rhs", residual_json<S>(chk.rhs)}});
                }
            }

    json j = report_head(rc);
    j["states"] = states.size();
    j["pairs_checked"] = pairs;
    j["failures"] = failures;
    if (failures > 0) j["counterexamples"] = fail_list;
    j["pass"] = failures == 0;
    out << j.dump(2) << "\n";
    return failures == 0 ? 0 : 1;
}

template <class S>
int run_ergodicity(const RunConfig& rc, std::ostream& out) {
    Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
    GibbsParams<S> params = make_params<S>(rc);
    const bool scc = check_ergodicity(sector, params, rc.enum_cap);

    std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
    std::mt19937_64 rng(rc.seed);
    long replay_fail = 0;
    long total_moves = 0;
    for (long i = 0; i < rc.samples; ++i) {
        const Configuration& from = states[rng() % states.size()];
        const Configuration& to = states[rng() % states.size()];
        FaceGrid h = relative_height(from, to);
        std::vector<SingleMove> moves = connect(from, to);
        total_moves += static_cast<long>(moves.size());
        if (static_cast<long>(moves.size()) != h.total() || !(replay_moves(from, moves) == to))
            ++replay_fail;
    }

    json j = report_head(rc);
    j["states"] = states.size();
    j["strongly_connected"] = scc;
    j["connect_samples"] = rc.samples;
    j["connect_seed"] = rc.seed;
    j["connect_failures"] = replay_fail;
    j["connect_total_moves"] = total_moves;
    j["pass"] = scc && replay_fail == 0;
    out << j.dump(2) << "\n";
    return (scc && replay_fail == 0) ? 0 : 1;
}

int run_verify(const RunConfig& rc, std::ostream& out) {
    const std::string what = rc.command.substr(std::string("verify.").size());
    if (what == "stationarity")
        return rc.rational_mode ? run_stationarity<Rat>(rc, out) : run_stationarity<double>(rc, out);
    if (what == "identity")
        return rc.rational_mode ? run_identity<Rat>(rc, out) : run_identity<double>(rc, out);
    if (what == "balance")
        return rc.rational_mode ? run_balance<Rat>(rc, out) : run_balance<double>(rc, out);
    if (what == "ergodicity")
        return rc.rational_mode ? run_ergodicity<Rat>(rc, out) : run_ergodicity<double>(rc, out);
    throw usage_error("unknown verify target '" + what + "'");
}

int run_simulate(const RunConfig& rc, std::ostream& out) {
    Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
    GibbsParams<double> params = make_params<double>(rc);

    Configuration init = [&]() {
        if (!rc.init_file.empty()) {
            Configuration c = load_config_file(rc.init_file);
            if (!(sector_of(c) == sector))
                throw usage_error("--init configuration is not in sector " + sector.describe());
            return c;
        }
        try {
            return twisted_configuration(sector);
        } catch (const sector_error&) {
            std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
            if (states.empty()) throw usage_error("sector is empty");
            return states.front();
        }
    }();

    std::ofstream events;
    if (!rc.events_csv.empty()) {
        events.open(rc.events_csv);
        if (!events) throw usage_error("cannot write '" + rc.events_csv + "'");
        events << "time,root_row,root_col,family_size\n";
    }

    SimulateOptions opt;
    opt.t_max = rc.t_max;
    opt.seed = rc.seed;
    opt.max_events = rc.max_events;
    opt.track_occupation = true;
    if (events.is_open()) {
        opt.observer = [&](const Configuration& cur, const TrajectoryEvent& ev) {
            int col = cur.position(ev.root) - 1;
            if (col < 0) col += cur.L();
            events << ev.time << ',' << ev.root.row << ',' << col << ',' << ev.family_size << '\n';
        };
    }

    Trajectory traj = simulate(init, params, opt);

    json occ = json::object();
    {
        std::vector<std::pair<std::string, double>> items(traj.occupation_time.begin(),
                                                          traj.occupation_time.end());
        std::sort(items.begin(), items.end());
        for (auto& [hex, t] : items) occ[hex] = t;
    }
    if (!rc.occupation_json.empty()) {
        std::ofstream of(rc.occupation_json);
        if (!of) throw usage_error("cannot write '" + rc.occupation_json + "'");
        of << occ.dump(2) << "\n";
    }

    json j = report_head(rc);
    j["params"]["seed"] = rc.seed;
    j["params"]["t_max"] = rc.t_max;
    if (rc.max_events > 0) j["params"]["max_events"] = rc.max_events;
    j["params"]["mode"] = "float";
    j["initial"] = config_json(init);
    j["events"] = traj.event_count;
    j["t_end"] = traj.t_end;
    j["distinct_states_visited"] = traj.occupation_time.size();
    if (traj.occupation_time.size() <= 4096)
        j["occupation_time"] = occ;
    j["final"] = config_json(traj.final_config);
    out << j.dump(2) << "\n";
    return 0;
}

int run_connect(const RunConfig& rc, std::ostream& out) {
    Configuration from = [&]() {
        if (!rc.from_file.empty()) return load_config_file(rc.from_file);
        Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
        std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
        if (states.empty()) throw usage_error("sector is empty");
        std::mt19937_64 rng(rc.seed);
        return states[rng() % states.size()];
    }();
    Configuration to = [&]() {
        if (!rc.to_file.empty()) return load_config_file(rc.to_file);
        Sector sector = Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
        std::vector<Configuration> states = enumerate_sector(sector, rc.enum_cap);
        std::mt19937_64 rng(rc.seed + 1);
        return states[rng() % states.size()];
    }();
    if (rc.from_file.empty() != rc.to_file.empty())
        throw usage_error("--from and --to must be given together");

    std::vector<SingleMove> moves = connect(from, to);
    const bool ok = replay_moves(from, moves) == to;

    json j = report_head(rc);
    j["from"] = config_json(from);
    j["to"] = config_json(to);
    json mv = json::array();
    for (const SingleMove& m : moves) mv.push_back(json{{"row", m.row}, {"x", m.x}});
    j["moves"] = mv;
    j["move_count"] = moves.size();
    j["replay_ok"] = ok;
    j["pass"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int run_info(const RunConfig& rc, std::ostream& out) {
    json j = report_head(rc);
    j["enum_cap"] = rc.enum_cap;
    j["rng"] = "mt19937_64, uniforms via (x >> 11) * 2^-53";
    if (rc.L > 0) {
        Sector s = Sector::checked(rc.L, rc.N, rc.m1, std::max(rc.m2, 0));
        json sec;
        sec["n1"] = s.n1();
        sec["n2"] = s.n2();
        sec["winding_h"] = s.winding_h();
        sec["winding_v"] = s.winding_v();
        sec["proper"] = s.proper();
        bool twisted = true;
        try {
            twisted_configuration(s);
        } catch (const std::exception&) {
            twisted = false;
        }
        sec["twisted_seed_exists"] = twisted;
        j["sector"] = sec;
    }
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"periodized q-deformed interlaced particle dynamics"};
    app.require_subcommand(1);

    RawArgs raw;
    raw.cap = env_enum_cap();

    auto* cmd_enum = app.add_subcommand("enumerate", "list configurations by sector");
    cmd_enum->add_option("--L", raw.L)->required();
    cmd_enum->add_option("--N", raw.N)->required();
    cmd_enum->add_option("--m1", raw.m1)->required();
    cmd_enum->add_option("--m2", raw.m2);
    cmd_enum->add_flag("--count-only", raw.count_only, "print sector sizes only");
    cmd_enum->add_option("--cap", raw.cap, "candidate cap override");

    auto* cmd_verify = app.add_subcommand("verify", "machine checks of the stationarity proof");
    cmd_verify->require_subcommand(1);
    for (const char* what : {"stationarity", "identity", "balance", "ergodicity"}) {
        auto* sub = cmd_verify->add_subcommand(what);
        add_sector_options(sub, raw, true);
        add_gibbs_options(sub, raw);
        sub->add_option("--cap", raw.cap);
        sub->add_option("--threads", raw.threads);
        if (std::string(what) == "stationarity") {
            sub->add_option("--perturb-state", raw.perturb_state,
                            "double this state's weight (negative control)");
            sub->add_option("--measure-csv", raw.measure_csv, "write the measure table CSV here");
        }
        if (std::string(what) == "identity" || std::string(what) == "ergodicity") {
            sub->add_option("--samples", raw.samples);
            sub->add_option("--seed", raw.seed);
        }
    }

    auto* cmd_sim = app.add_subcommand("simulate", "continuous-time Monte Carlo");
    add_sector_options(cmd_sim, raw, true);
    add_gibbs_options(cmd_sim, raw);
    cmd_sim->add_option("--t-max", raw.t_max)->required();
    cmd_sim->add_option("--seed", raw.seed);
    cmd_sim->add_option("--max-events", raw.max_events);
    cmd_sim->add_option("--init", raw.init_file, "initial configuration JSON file");
    cmd_sim->add_option("--events-csv", raw.events_csv);
    cmd_sim->add_option("--occupation-json", raw.occupation_json);
    cmd_sim->add_option("--cap", raw.cap);

    auto* cmd_conn = app.add_subcommand("connect", "move chain between two states");
    add_sector_options(cmd_conn, raw, true);
    cmd_conn->add_option("--seed", raw.seed);
    cmd_conn->add_option("--from", raw.from_file);
    cmd_conn->add_option("--to", raw.to_file);
    cmd_conn->add_option("--cap", raw.cap);

    auto* cmd_info = app.add_subcommand("info", "build and sector facts");
    cmd_info->add_option("--L", raw.L);
    cmd_info->add_option("--N", raw.N);
    cmd_info->add_option("--m1", raw.m1);
    cmd_info->add_option("--m2", raw.m2);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what());
    }

    RunConfig rc;
    rc.L = raw.L;
    rc.N = raw.N;
    rc.m1 = raw.m1;
    rc.m2 = raw.m2;
    rc.seed = raw.seed;
    rc.t_max = raw.t_max;
    rc.max_events = raw.max_events;
    rc.samples = raw.samples;
    rc.threads = raw.threads;
    rc.enum_cap = raw.cap;
    rc.count_only = raw.count_only;
    rc.perturb_state = raw.perturb_state;
    rc.init_file = raw.init_file;
    rc.from_file = raw.from_file;
    rc.to_file = raw.to_file;
    rc.events_csv = raw.events_csv;
    rc.occupation_json = raw.occupation_json;
    rc.measure_csv = raw.measure_csv;

    if (cmd_enum->parsed()) {
        rc.command = "enumerate";
        check_sector(rc, false);
        if (rc.m2 >= 0) {
            try {
                Sector::checked_proper(rc.L, rc.N, rc.m1, rc.m2);
            } catch (const sector_error& e) {
                throw usage_error(e.what());
            }
        }
    } else if (cmd_verify->parsed()) {
        for (const char* what : {"stationarity", "identity", "balance", "ergodicity"})
            if (cmd_verify->get_subcommand(what)->parsed()) rc.command = std::string("verify.") + what;
        check_sector(rc, true);
        finish_gibbs(raw, rc);
    } else if (cmd_sim->parsed()) {
        rc.command = "simulate";
        check_sector(rc, true);
        finish_gibbs(raw, rc);
        if (!(rc.t_max > 0)) throw usage_error("--t-max must be positive");
    } else if (cmd_conn->parsed()) {
        rc.command = "connect";
        check_sector(rc, true);
    } else if (cmd_info->parsed()) {
        rc.command = "info";
        if (rc.L > 0) check_sector(rc, false);
    } else {
        throw usage_error("no subcommand given");
    }
    return rc;
}

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    try {
        if (rc.command == "enumerate") return run_enumerate(rc, out);
        if (rc.command.rfind("verify.", 0) == 0) return run_verify(rc, out);
        if (rc.command == "simulate") return run_simulate(rc, out);
        if (rc.command == "connect") return run_connect(rc, out);
        if (rc.command == "info") return run_info(rc, out);
        throw usage_error("unknown command '" + rc.command + "'");
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const sector_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const structural_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const consistency_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        RunConfig rc = parse_args(args);
        return run(rc, out, err);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace qwtorus::cli
