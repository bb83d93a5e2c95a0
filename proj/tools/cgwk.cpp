#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "cgwk/core.hpp"
#include "cgwk/finset.hpp"
#include "cgwk/matroid.hpp"
#include "cgwk/presentation.hpp"
#include "cgwk/relations.hpp"
#include "cgwk/simplicial.hpp"

using namespace cgwk;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { Ok = 0, PropertyFailure = 2, BudgetSkip = 3, Usage = 64 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::string instance = "finset";
    std::string file;
    int max_size = 3;
    int dim = 2;
    std::string scheme = "baseline";
    std::vector<std::string> queries;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out;
    std::string mutant = "none";
    long samples = 500;
    bool exhaustive = true;
    std::string replay;

    // the echoed config of an earlier report
    void load(const json& j) {
        if (j.at("command") != command) throw UsageError("replayed report is for another command");
        instance = j.at("instance");
        max_size = j.at("max_size");
        seed = j.at("seed");
        file = j.value("file", std::string());
        dim = j.value("dim", dim);
        scheme = j.value("scheme", scheme);
        queries = j.value("queries", queries);
        mutant = j.value("mutant", mutant);
        exhaustive = j.value("exhaustive", exhaustive);
        samples = j.value("samples", samples);
    }

    json echo() const {
        json j{{"command", command}, {"instance", instance}, {"max_size", max_size}, {"seed", seed}};
        if (!file.empty()) j["file"] = file;
        if (command == "enumerate") j["dim"] = dim;
        if (command == "k1") {
            j["scheme"] = scheme;
            j["queries"] = queries;
        }
        if (command == "axioms") j["mutant"] = mutant;
        if (command == "relcheck") {
            j["exhaustive"] = exhaustive;
            j["samples"] = samples;
        }
        return j;
    }
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return json::parse(in);
}

// ---- named elements of K1(FinSet) ----

Table cycle(int n) {
    Table t(n);
    for (int i = 0; i < n; ++i) t[i] = (i + 1) % n;
    return t;
}

std::optional<FDes> named_element(const std::string& name) {
    if (name == "l_tau") return l_aut({1, 0});
    if (name == "l_sigma") return l_aut(cycle(3));
    if (name == "l_id") return l_aut(identity_table(2));
    if (name == "tilde_tau") return l_tilde({1, 0});
    if (name == "e1") return standard_edge(1);
    return std::nullopt;
}

// "2*l_tau", "l_tau - tilde_tau", ...
std::vector<std::pair<std::string, long>> parse_query(const std::string& q) {
    std::vector<std::pair<std::string, long>> terms;
    std::string s;
    for (char ch : q)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    static const std::regex term(R"(([+-]?)(?:(\d+)\*)?([A-Za-z_][A-Za-z_0-9]*))");
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::smatch m;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous))
            throw UsageError("cannot parse query '" + q + "'");
        if (pos > 0 && m[1].str().empty()) throw UsageError("missing operator in query '" + q + "'");
        long k = m[2].matched ? std::stol(m[2].str()) : 1;
        if (m[1].str() == "-") k = -k;
        auto d = named_element(m[3].str());
        if (!d) throw UsageError("unknown element '" + m[3].str() + "'");
        terms.push_back({des_key(*d), k});
        pos += m.length(0);
    }
    if (terms.empty()) throw UsageError("empty query");
    return terms;
}

// ---- commands ----

struct Outcome {
    json result;
    int code = Ok;
    std::string summary;
};

Outcome cmd_axioms(const Config& cfg) {
    CategoryBudget b;
    b.maxObjectSize = cfg.max_size;
    b.rngSeed = cfg.seed;
    Outcome o;
    AxiomReport rep;
    if (cfg.instance == "finset") {
        auto m = parse_mutant(cfg.mutant);
        if (!m) throw UsageError("unknown mutant '" + cfg.mutant + "'");
        rep = verify_axioms(FinSet(*m), b);
    } else {
        if (cfg.mutant != "none") throw UsageError("mutants exist for finset only");
        if (!cfg.file.empty()) {
            try {
                auto x = named_from_json(read_json(cfg.file));
                o.result["file_matroid"] = named_to_json(x);
                b.maxObjectSize = std::min(cfg.max_size, x.m.n - 1);
            } catch (const InvalidMatroid& e) {
                o.result["invalid_matroid"] = e.what();
                o.code = PropertyFailure;
                o.summary = std::string("invalid matroid: ") + e.what();
                return o;
            }
        }
        rep = verify_axioms(MatroidCat{}, b);
    }
    o.result["budget"] = budget_json(b);
    o.result["axioms"] = rep.to_json();
    o.code = rep.any_fail() ? PropertyFailure : rep.any_skipped() ? BudgetSkip : Ok;
    o.summary = rep.any_fail() ? "axiom failure" : rep.any_skipped() ? "pass; pCGW axioms skipped" : "all axioms pass";
    return o;
}

json k0_summary(const Presentation& p, const Group& g) {
    json j = g.summary();
    j["generators"] = p.generators.size();
    j["relations"] = p.relations.size();
    return j;
}

Outcome cmd_k0(const Config& cfg) {
    Outcome o;
    Presentation p;
    std::unique_ptr<Group> g;
    bool par = cfg.workers != 1;
    if (cfg.instance == "finset") {
        FinSet c;
        p = k0_presentation(c, cfg.max_size, par);
        g = std::make_unique<Group>(p);
        o.result = k0_summary(p, *g);
        // cardinality map [n] -> n on generators
        json card = json::object();
        for (int n = 1; n <= cfg.max_size; ++n) card[object_label(c, range_obj(n))] = n;
        o.result["cardinality"] = card;
    } else {
        MatroidCat c;
        p = k0_presentation(c, cfg.max_size, par);
        g = std::make_unique<Group>(p);
        o.result = k0_summary(p, *g);
        // [M + N] = [M] + [N] for pairs fitting the budget
        long checked = 0, held = 0;
        json first = nullptr;
        for (int a = 1; a <= cfg.max_size; ++a)
            for (int b = 1; a + b <= cfg.max_size; ++b)
                for (auto& x : matroid_classes(a))
                    for (auto& y : matroid_classes(b)) {
                        auto s = c.direct_sum(x, y).obj;
                        auto e = p.element(
                            {{object_label(c, s), 1}, {object_label(c, x), -1}, {object_label(c, y), -1}});
                        ++checked;
                        if (g->is_zero(e))
                            ++held;
                        else if (first.is_null())
                            first = {{"x", c.to_json(x)}, {"y", c.to_json(y)}};
                    }
        o.result["direct_sum_audit"] = {{"checked", checked}, {"held", held}};
        if (!first.is_null()) o.result["direct_sum_audit"]["first_open"] = first;
    }
    std::ostringstream s;
    s << "K0: free rank " << g->free_rank() << ", " << g->invariant_factors().size() << " torsion factors, "
      << p.generators.size() << " generators, " << p.relations.size() << " relations";
    o.summary = s.str();
    return o;
}

Outcome cmd_k1(const Config& cfg) {
    Outcome o;
    if (cfg.instance != "finset") {
        o.code = BudgetSkip;
        o.result = {{"skipped", "K1 presentations need a pCGW instance"}};
        o.summary = "skipped: instance is not pCGW";
        return o;
    }
    FinSet c;
    bool par = cfg.workers != 1;
    Presentation p;
    if (cfg.scheme == "baseline") {
        p = k1_presentation_baseline(c, cfg.max_size, par);
    } else {
        HarvestCounts hc;
        auto diagrams = harvest_3x3(c, cfg.max_size, &hc);
        p = k1_presentation_nenashev(c, cfg.max_size, diagrams, par);
        o.result["harvest"] = hc.to_json();
    }
    Group g(p);
    o.result["group"] = g.summary();
    o.result["generators"] = p.generators.size();
    o.result["relations"] = p.relations.size();
    std::map<std::string, long> tags;
    for (auto& t : p.tags) ++tags[t];
    o.result["relation_tags"] = tags;
    auto audit = oracle_respects_relations(p);
    o.result["oracle_audit"] = audit.to_json(p);
    json qs = json::array();
    for (auto& q : cfg.queries) {
        auto terms = parse_query(q);
        json e{{"query", q}};
        long sign = 0;
        for (auto& [k, v] : terms) sign += v * generator_sign(k);
        e["sign"] = ((sign % 2) + 2) % 2;
        try {
            e["zero"] = g.is_zero(p.element(terms));
        } catch (const UnknownGenerator&) {
            e["zero"] = nullptr;
            e["note"] = "outside the budget";
        }
        qs.push_back(e);
    }
    if (!cfg.queries.empty()) o.result["queries"] = qs;
    if (cfg.scheme == "nenashev") {
        // A1 and A2 as membership in this presentation
        auto a1 = a1_law(c, cfg.max_size, 200, cfg.seed, par);
        o.result["a1_audit"] = a1.to_json();
        if (!a1.ok()) audit.ok = false;
    }
    o.code = audit.ok ? Ok : PropertyFailure;
    std::ostringstream s;
    s << "K1 (" << cfg.scheme << "): free rank " << g.free_rank() << ", factors [";
    for (std::size_t i = 0; i < g.invariant_factors().size(); ++i) s << (i ? "," : "") << g.invariant_factors()[i];
    s << "], oracle audit " << (audit.ok ? "ok" : "FAILED");
    o.summary = s.str();
    return o;
}

Outcome cmd_relcheck(const Config& cfg) {
    Outcome o;
    if (cfg.instance != "finset") {
        o.code = BudgetSkip;
        o.result = {{"skipped", "relation checks need a pCGW instance"}};
        o.summary = "skipped: instance is not pCGW";
        return o;
    }
    FinSet c;
    SuiteConfig sc{cfg.max_size, cfg.exhaustive, cfg.samples, cfg.seed, cfg.workers != 1};
    auto suites = relcheck_all(c, sc);
    json arr = json::array();
    bool ok = true;
    std::ostringstream s;
    for (auto& r : suites) {
        arr.push_back(r.to_json());
        ok &= r.ok();
        s << r.name << " " << r.passed << "/" << r.cases << (r.skipped ? " (" + std::to_string(r.skipped) + " skipped)" : "")
          << "; ";
    }
    o.result["suites"] = arr;
    o.code = ok ? Ok : PropertyFailure;
    o.summary = s.str();
    return o;
}

Outcome cmd_matroid_amalgam(const Config& cfg) {
    if (cfg.file.empty()) throw UsageError("matroid-amalgam needs --file");
    auto j = read_json(cfg.file);
    Outcome o;
    NamedMatroid m0, m1, n;
    try {
        m0 = named_from_json(j.at("M0"));
        m1 = named_from_json(j.at("M1"));
        n = named_from_json(j.at("N"));
    } catch (const InvalidMatroid& e) {
        o.code = PropertyFailure;
        o.result = {{"invalid_matroid", e.what()}};
        o.summary = std::string("invalid matroid: ") + e.what();
        return o;
    } catch (const json::exception& e) {
        throw UsageError(std::string("span file: ") + e.what());
    }
    try {
        auto rep = amalgam_search(m0, m1, n, 7, cfg.workers != 1);
        o.result = rep.to_json();
        o.summary = rep.found ? "amalgam found" : "no amalgam";
        o.summary += rep.initial_found ? "; initial amalgam found" : "; no initial amalgam";
    } catch (const SearchBudgetExceeded& e) {
        o.code = BudgetSkip;
        o.result = {{"budget_exceeded", e.what()}};
        o.summary = std::string("search budget exceeded: ") + e.what();
    } catch (const InvalidSubset& e) {
        o.code = PropertyFailure;
        o.result = {{"not_a_span", e.what()}};
        o.summary = std::string("not a span: ") + e.what();
    }
    return o;
}

Outcome cmd_enumerate(const Config& cfg) {
    Outcome o;
    std::ostringstream s;
    if (cfg.instance == "finset") {
        FinSet c;
        if (cfg.dim < 0 || cfg.dim > 3) throw UsageError("--dim must be between 0 and 3");
        o.result["objects"] = c.objects(cfg.max_size).size();
        o.result["object_classes"] = c.object_classes(cfg.max_size).size();
        json sdims = json::object();
        for (int n = 0; n <= cfg.dim; ++n) sdims[std::to_string(n)] = enumerate_s_simplices(c, n, cfg.max_size).size();
        o.result["s_simplices"] = sdims;
        o.result["g_edges"] = enumerate_g_edges(c, cfg.max_size).size();
        o.result["g_two_simplices"] = enumerate_g_two_simplices(c, cfg.max_size).size();
        o.result["des_classes"] = des_classes(cfg.max_size).size();
        s << o.result["des_classes"] << " double exact square classes";
    } else {
        if (cfg.max_size > 6) throw UsageError("matroid enumeration is capped at 6 elements");
        json lab = json::array(), cls = json::array();
        for (int k = 0; k <= cfg.max_size; ++k) {
            lab.push_back(labeled_matroids(k).size());
            cls.push_back(matroid_classes(k).size());
        }
        o.result["labeled"] = lab;
        o.result["classes"] = cls;
        s << "matroid classes " << cls.dump();
    }
    o.summary = s.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cgwk: K-theory of CGW categories"};
    app.require_subcommand(1);
    Config cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--instance", cfg.instance)->check(CLI::IsMember({"finset", "matroid"}));
        sub->add_option("--file", cfg.file);
        sub->add_option("--max-size", cfg.max_size)->check(CLI::Range(0, 8));
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--workers", cfg.workers)->check(CLI::NonNegativeNumber);
        sub->add_option("--out", cfg.out);
        sub->add_option("--replay", cfg.replay, "rerun the config echoed in a report");
    };
    auto* ax = app.add_subcommand("axioms", "verify the CGW and pCGW axioms at a budget");
    common(ax);
    ax->add_option("--mutant", cfg.mutant);
    auto* k0 = app.add_subcommand("k0", "K0 presentation and its Smith normal form");
    common(k0);
    auto* k1 = app.add_subcommand("k1", "truncated K1 presentation");
    common(k1);
    k1->add_option("--scheme", cfg.scheme)->check(CLI::IsMember({"baseline", "nenashev"}));
    k1->add_option("--query", cfg.queries);
    auto* rc = app.add_subcommand("relcheck", "relation and construction suites");
    common(rc);
    rc->add_option("--samples", cfg.samples);
    bool random = false;
    rc->add_flag("--random", random, "sample random cases instead of exhaustive enumeration");
    auto* am = app.add_subcommand("matroid-amalgam", "search for an amalgam of a matroid span");
    common(am);
    auto* en = app.add_subcommand("enumerate", "count enumerated objects and simplices");
    common(en);
    en->add_option("--dim", cfg.dim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.exhaustive = !random;
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);

    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (!cfg.replay.empty()) cfg.load(read_json(cfg.replay).at("config"));
        if (cfg.command == "axioms")
            o = cmd_axioms(cfg);
        else if (cfg.command == "k0")
            o = cmd_k0(cfg);
        else if (cfg.command == "k1")
            o = cmd_k1(cfg);
        else if (cfg.command == "relcheck")
            o = cmd_relcheck(cfg);
        else if (cfg.command == "matroid-amalgam")
            o = cmd_matroid_amalgam(cfg);
        else
            o = cmd_enumerate(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return Usage;
    } catch (const BudgetExhausted& e) {
        o.code = BudgetSkip;
        o.result = {{"budget_exhausted", e.what()}};
        o.summary = e.what();
    } catch (const json::exception& e) {
        std::cerr << "usage: bad JSON input: " << e.what() << "\n";
        return Usage;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report{{"command", cfg.command}, {"config", cfg.echo()}, {"result", o.result}, {"version", kVersion},
                {"exit_code", o.code}};
    std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "usage: cannot write " << cfg.out << "\n";
            return Usage;
        }
        f << text;
    }
    std::cerr << cfg.command << ": " << o.summary << " (" << secs << " s)\n";
    return o.code;
}
