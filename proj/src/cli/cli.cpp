#include "genring/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#ifndef GENRING_DEFAULT_GOLDEN_DIR
#define GENRING_DEFAULT_GOLDEN_DIR "goldens"
#endif

namespace genring {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kVersion = "genring 1";

// ---------------------------------------------------------------- ring specifications

namespace {

class SpecParser {
public:
    explicit SpecParser(std::string_view s) : s_(s) {}

    RingSpec parse() {
        RingSpec r;
        r.name = ident();
        if (r.name.empty()) fail("expected a ring name");
        if (eat(':')) {
            if (r.name == "FM") {
                r.args.emplace_back("", std::string(s_.substr(i_)));
                i_ = s_.size();
            } else {
                do r.args.push_back(arg());
                while (eat(','));
            }
        }
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    std::pair<std::string, std::string> arg() {
        std::string a = value();
        if (eat('=')) {
            if (a.empty()) fail("empty key");
            std::string v = value();
            if (v.empty()) fail("empty value for " + a);
            return {a, v};
        }
        if (a.empty()) fail("empty argument");
        return {"", a};
    }
    std::string ident() {
        size_t b = i_;
        while (i_ < s_.size() && std::isalpha((unsigned char)s_[i_])) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }
    std::string value() {
        size_t b = i_;
        while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '/' || s_[i_] == '-')) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }
    bool eat(char c) {
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& m) const {
        throw ParseError("ring spec '" + std::string(s_) + "' at " + std::to_string(i_) + ": " + m);
    }

    std::string_view s_;
    size_t i_ = 0;
};

long int_arg(const RingSpec& r, const std::string& key, std::optional<long> dflt = std::nullopt) {
    for (auto& [k, v] : r.args)
        if (k == key || (k.empty() && key.empty())) {
            try {
                size_t pos = 0;
                long x = std::stol(v, &pos);
                if (pos != v.size()) throw std::invalid_argument(v);
                return x;
            } catch (const std::exception&) {
                throw ParseError(r.name + ": expected an integer, got '" + v + "'");
            }
        }
    if (dflt) return *dflt;
    throw ParseError(r.name + ": missing argument" + (key.empty() ? "" : " " + key));
}

void no_args(const RingSpec& r) {
    if (!r.args.empty()) throw ParseError(r.name + " takes no arguments");
}

template <class T>
RingPtr alias(const std::shared_ptr<T>& owner) {
    return RingPtr(owner, &owner->ring());
}

}  // namespace

RingSpec parse_ring_spec(std::string_view text) { return SpecParser(text).parse(); }

RingHandle make_ring(const RingSpec& r, int bound) {
    RingHandle h;
    const std::string& n = r.name;
    auto finite = [&](RingPtr R) {
        h.ring = R;
        h.ideals = std::make_shared<FiniteIdeals>(R, bound);
    };
    if (n == "F") {
        no_args(r);
        finite(make_F());
    } else if (n == "GZ") {
        no_args(r);
        auto T = std::make_shared<SymbolicGIdeals>(SymbolicGIdeals::Kind::Z, 0);
        h.ideals = T;
        h.ring = alias(T);
    } else if (n == "GN") {
        no_args(r);
        h.ring = make_G(Semiring::naturals());
    } else if (n == "GQ") {
        no_args(r);
        h.ring = make_G(Semiring::rationals());
    } else if (n == "Gtrop") {
        no_args(r);
        h.ring = make_G(Semiring::tropical());
    } else if (n == "GZmod") {
        long m = int_arg(r, "");
        if (m < 2) throw ParseError("GZmod needs a modulus >= 2");
        auto T = std::make_shared<SymbolicGIdeals>(SymbolicGIdeals::Kind::Zmod, m);
        h.ideals = T;
        h.ring = alias(T);
    } else if (n == "GZinv") {
        long m = int_arg(r, "");
        if (m < 2) throw ParseError("GZinv needs N >= 2");
        auto T = std::make_shared<SymbolicGIdeals>(SymbolicGIdeals::Kind::ZInv, m);
        h.ideals = T;
        h.ring = alias(T);
    } else if (n == "Oeta") {
        no_args(r);
        h.ring = make_Oeta();
    } else if (n == "Fpm") {
        no_args(r);
        finite(make_monoid_ring(FiniteMonoid::signs()));
    } else if (n == "FzN" || n == "FzZ") {
        no_args(r);
        auto T = std::make_shared<PolyMonoidIdeals>(n == "FzZ");
        h.ideals = T;
        h.ring = alias(T);
    } else if (n == "FM") {
        if (r.args.size() != 1) throw ParseError("FM needs a table file");
        std::ifstream in(r.args[0].second);
        if (!in) throw ParseError("FM: cannot read " + r.args[0].second);
        std::stringstream ss;
        ss << in.rdbuf();
        std::shared_ptr<FiniteMonoid> M;
        try {
            M = FiniteMonoid::from_json(ss.str());
        } catch (const std::exception& e) {
            throw ParseError(std::string("FM: ") + e.what());
        }
        finite(make_monoid_ring(M));
    } else if (n == "Delta") {
        h.tree = true;
        if (r.args.empty()) {
            h.ring = make_Delta();
        } else {
            h.ring = make_DeltaW((int)int_arg(r, "W"));
        }
    } else if (n == "Upsilon") {
        no_args(r);
        h.tree = true;
        h.ring = make_Upsilon();
    } else if (n == "AN") {
        long m = int_arg(r, "");
        if (m < 2 || !is_squarefree(m)) throw ParseError("AN needs a square-free N >= 2");
        h.ring = std::make_shared<ANRing>(m);
    } else {
        throw ParseError("unknown ring '" + n + "'");
    }
    return h;
}

Element parse_scalar(const Ring& R, std::string_view token) {
    std::string t(token);
    if (auto* M = dynamic_cast<const MonoidRing*>(&R)) {
        if (t == "0") return M->zero(1);
        return M->scalar(M->monoid().parse(t));
    }
    if (auto* G = dynamic_cast<const GRing*>(&R)) return G->parse("g[" + t + "]", 1);
    return R.parse(t, 1);
}

// ---------------------------------------------------------------- commands

namespace {

struct Options {
    std::string format = "tsv";
    std::uint64_t seed = 1;
    int trials = 500;
    int max_shape = 4;
    int node_cap = 12;
    std::size_t orbit_cap = 100000;
    int budget = 12;
    int bound = 2;
};

bool json_out(const Options& o) { return o.format == "json"; }

void header(std::ostream& out, const Options& o, const std::string& what) {
    if (!json_out(o)) out << "# " << kVersion << " " << what << "\n";
}

void emit_json(std::ostream& out, const std::string& command, ordered_json result) {
    ordered_json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["result"] = std::move(result);
    out << j.dump(2) << "\n";
}

int cmd_axioms(const Options& o, const std::string& spec, std::ostream& out) {
    RingHandle h = make_ring(parse_ring_spec(spec), o.bound);
    HarnessOptions opt{o.trials, o.max_shape, o.seed, true, !h.tree};
    AxiomReport rep = check_axioms(*h.ring, opt);
    bool ok = true;
    for (auto& a : rep.results) ok = ok && a.passed();
    if (json_out(o)) {
        emit_json(out, "axioms", ordered_json::parse(report_json(rep)));
    } else {
        header(out, o, "axioms ring=" + spec + " seed=" + std::to_string(o.seed) + " trials=" + std::to_string(o.trials));
        out << report_tsv(rep);
    }
    return ok ? kOk : kFailure;
}

ordered_json oriented_json(const OrientedTable& t) {
    ordered_json rows = ordered_json::array();
    for (auto& c : t.classes)
        rows.push_back({{"partition", format_partition(c.partition)},
                        {"orientation", c.orientation < 0 ? ordered_json("*") : ordered_json(c.orientation)},
                        {"tree", to_text(c.canonical)},
                        {"class_size", c.members.size()}});
    return {{"N", t.N}, {"complete", t.complete}, {"classes", rows}};
}

int cmd_trees(const Options& o, int N, std::ostream& out) {
    OrientedTable t = enumerate_oriented(N, o.node_cap, o.orbit_cap);
    if (json_out(o)) {
        emit_json(out, "trees", oriented_json(t));
    } else {
        header(out, o, "trees N=" + std::to_string(N));
        out << oriented_tsv(t);
    }
    return t.complete ? kOk : kUnknown;
}

int cmd_nabla_fiber(const Options& o, int N, std::ostream& out) {
    auto U = make_Upsilon();
    FiberTable t = nabla_fiber(*U, N, o.node_cap, o.budget);
    if (json_out(o)) {
        ordered_json rows = ordered_json::array();
        for (size_t i = 0; i < t.classes.size(); ++i)
            rows.push_back({{"class", i}, {"plus_class", t.classes[i].plus_class}, {"datum", U->format(t.classes[i].rep)}});
        emit_json(out, "nabla",
                  {{"N", N}, {"classes", rows}, {"plus_classes", t.plus_classes}, {"unknown_pairs", t.unknown_pairs},
                   {"complete", t.complete}});
    } else {
        header(out, o, "nabla fiber=" + std::to_string(N) + " budget=" + std::to_string(o.budget));
        out << fiber_tsv(*U, t);
    }
    return t.complete && t.unknown_pairs == 0 ? kOk : kUnknown;
}

int cmd_nabla_equiv(const Options& o, const std::string& a, const std::string& b, std::ostream& out) {
    auto U = make_Upsilon();
    Element x = U->parse(a, 1), y = U->parse(b, 1);
    EquivResult r = selfadjoint_equiv(*U, x, y, o.budget);
    if (json_out(o)) {
        emit_json(out, "nabla", {{"verdict", to_string(r.verdict)}, {"states", r.states}, {"pruned", r.pruned}});
    } else {
        header(out, o, "nabla equiv budget=" + std::to_string(o.budget));
        out << "verdict\tstates\tpruned\n"
            << to_string(r.verdict) << "\t" << r.states << "\t" << (r.pruned ? "yes" : "no") << "\n";
    }
    switch (r.verdict) {
        case Verdict::Equivalent: return kOk;
        case Verdict::Inequivalent: return kFailure;
        case Verdict::Unknown: return kUnknown;
    }
    return kUnknown;
}

IdealTheory& ideals_of(const RingHandle& h, const std::string& spec) {
    if (!h.ideals) throw ParseError("no ideal model for ring " + spec);
    return *h.ideals;
}

int cmd_spec(const Options& o, const std::string& spec, long bound, std::ostream& out) {
    RingHandle h = make_ring(parse_ring_spec(spec), o.bound);
    IdealTheory& T = ideals_of(h, spec);
    Spectrum S = spectrum(T, bound);
    if (json_out(o)) {
        ordered_json pts = ordered_json::array();
        for (int i = 0; i < (int)S.points.size(); ++i)
            pts.push_back({{"prime", S.points[i].label}, {"closed", is_closed_point(T, S, i)}});
        emit_json(out, "spec", {{"ring", T.name()}, {"complete", S.complete}, {"points", pts}});
    } else {
        out << "// " << kVersion << " spec ring=" << spec << "\n" << spec_dot(T, S);
    }
    return kOk;
}

Ideal ideal_from(const RingHandle& h, const std::string& gens) {
    std::vector<Element> es;
    std::stringstream ss(gens);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) es.push_back(parse_scalar(*h.ring, tok));
    return h.ideals->generated(es);
}

int cmd_ideal(const Options& o, const std::string& spec, const std::string& op, const std::vector<std::string>& xs,
              std::ostream& out) {
    RingHandle h = make_ring(parse_ring_spec(spec), o.bound);
    IdealTheory& T = ideals_of(h, spec);
    auto need = [&](size_t k) {
        if (xs.size() != k) throw ParseError("ideal " + op + " takes " + std::to_string(k) + " operand(s)");
    };
    std::string result;
    int code = kOk;
    if (op == "show") {
        need(1);
        result = T.format(ideal_from(h, xs[0]));
    } else if (op == "sum" || op == "product" || op == "quotient") {
        need(2);
        Ideal a = ideal_from(h, xs[0]), b = ideal_from(h, xs[1]);
        Ideal c = op == "sum" ? T.sum(a, b) : op == "product" ? T.product(a, b) : T.quotient(a, b);
        result = T.format(c);
    } else if (op == "radical") {
        need(1);
        result = T.format(T.radical(ideal_from(h, xs[0])));
    } else if (op == "contains") {
        need(2);
        bool in = T.contains(ideal_from(h, xs[0]), parse_scalar(*h.ring, xs[1]));
        result = in ? "true" : "false";
        code = in ? kOk : kFailure;
    } else if (op == "prime") {
        need(1);
        bool p = T.is_prime(ideal_from(h, xs[0]));
        result = p ? "true" : "false";
        code = p ? kOk : kFailure;
    } else if (op == "stable") {
        need(1);
        auto* F = dynamic_cast<FiniteIdeals*>(h.ideals.get());
        if (!F) throw ParseError("ideal stable needs a finite ring");
        StabilityResult s = estable_check(*F, ideal_from(h, xs[0]), o.max_shape < 2 ? o.max_shape : 2);
        result = to_string(s.verdict) + " (shapes <= " + std::to_string(s.bound) + ")" +
                 (s.witness ? ": " + *s.witness : "");
        code = s.verdict == Stability::Stable ? kOk : s.verdict == Stability::Unstable ? kFailure : kUnknown;
    } else if (op == "list") {
        need(0);
        auto* F = dynamic_cast<FiniteIdeals*>(h.ideals.get());
        if (!F) throw ParseError("ideal list needs a finite ring");
        for (auto& a : F->h_ideals()) result += (result.empty() ? "" : " ") + F->format(a);
    } else {
        throw ParseError("unknown ideal operation '" + op + "'");
    }
    if (json_out(o)) {
        emit_json(out, "ideal", {{"ring", T.name()}, {"op", op}, {"operands", xs}, {"result", result}});
    } else {
        header(out, o, "ideal ring=" + spec);
        out << "op\tresult\n" << op << "\t" << result << "\n";
    }
    return code;
}

int cmd_div(const Options& o, const std::string& text, std::ostream& out) {
    mpq_class f = parse_rational(text);
    Divisor D = div(f);
    NormValue n = norm_map(D);
    if (json_out(o)) {
        ordered_json comps = ordered_json::object();
        for (auto& [p, v] : D.nu) comps[p.get_str()] = v;
        emit_json(out, "div",
                  {{"f", f.get_str()}, {"components", comps}, {"eta_multiplicand", D.r.get_str()}, {"norm", n.q.get_str()}});
    } else {
        header(out, o, "div f=" + f.get_str());
        out << divisor_tsv(D) << "# norm " << n.q.get_str() << "\n";
    }
    return n.exact && n.q == 1 ? kOk : kFailure;
}

int cmd_divcheck(const Options&, const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    ProDivisorReport r = pro_divisor_checks(parse_tower_json(ss.str()));
    // JSON regardless of --format: the report is nested.
    out << pro_report_json(r);
    if (!r.monotone || !r.bounded) return kFailure;
    return r.stabilized ? kOk : kUnknown;
}

// ---------------------------------------------------------------- goldens

struct GoldenTable {
    std::string file;
    std::string text;
    bool complete;
};

std::vector<GoldenTable> golden_tables(const Options& o) {
    std::vector<GoldenTable> out;
    for (int N = 0; N <= 6; ++N) {
        OrientedTable t = enumerate_oriented(N, o.node_cap, o.orbit_cap);
        out.push_back({"oriented_" + std::to_string(N) + ".tsv", oriented_tsv(t), t.complete});
    }
    auto U = make_Upsilon();
    for (int N = 1; N <= 3; ++N) {
        FiberTable t = nabla_fiber(*U, N, o.node_cap, o.budget);
        out.push_back({"fiber_" + std::to_string(N) + ".tsv", fiber_tsv(*U, t), t.complete && t.unknown_pairs == 0});
    }
    return out;
}

int cmd_golden(const Options& o, std::string dir, bool update, std::ostream& out) {
    if (dir.empty()) {
        const char* env = std::getenv("GENRING_GOLDEN_DIR");
        dir = env && *env ? env : GENRING_DEFAULT_GOLDEN_DIR;
    }
    fs::create_directories(dir);
    header(out, o, "golden dir=" + dir);
    out << "file\tstatus\n";
    bool diff = false, incomplete = false;
    for (auto& t : golden_tables(o)) {
        fs::path p = fs::path(dir) / t.file;
        std::string status;
        if (!t.complete) {
            incomplete = true;
            status = "incomplete";
        } else if (!fs::exists(p)) {
            std::ofstream(p, std::ios::binary) << t.text;
            status = "created";
        } else {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            if (ss.str() == t.text) {
                status = "unchanged";
            } else if (update) {
                std::ofstream(p, std::ios::binary) << t.text;
                status = "updated";
            } else {
                diff = true;
                status = "differs";
            }
        }
        out << t.file << "\t" << status << "\n";
    }
    if (incomplete) return kUnknown;
    return diff ? kFailure : kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized rings: axiom harness, tree enumerations, spectra and divisors", "genring"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--trials", o.trials, "Random trials per axiom")->check(CLI::PositiveNumber);
    app.add_option("--max-shape", o.max_shape, "Largest shape sampled")->check(CLI::Range(0, 8));
    app.add_option("--node-cap", o.node_cap, "Largest tree enumerated")->check(CLI::PositiveNumber);
    app.add_option("--orbit-cap", o.orbit_cap, "Orbit size cap for canonical forms")->check(CLI::PositiveNumber);
    app.add_option("--budget", o.budget, "Node budget for equivalence search")->check(CLI::PositiveNumber);

    std::string ring = "GZ";
    auto* axioms = app.add_subcommand("axioms", "Run the axiom harness on a ring");
    axioms->add_option("--ring", ring, "Ring specification")->required();

    int trees_n = 0;
    auto* trees = app.add_subcommand("trees", "Reduced oriented trees with N leaves up to commutativity");
    trees->add_option("N", trees_n, "Number of leaves")->required()->check(CLI::NonNegativeNumber);

    int fiber = 0;
    std::vector<std::string> equiv;
    auto* nabla = app.add_subcommand("nabla", "Fibers of the diagonal and self-adjoint equivalence");
    auto* fopt = nabla->add_option("--fiber", fiber, "Classes over [1] with diagonal N")->check(CLI::PositiveNumber);
    auto* eopt = nabla->add_option("--equiv", equiv, "Two data over [1]")->expected(2);
    fopt->excludes(eopt);

    long spec_bound = 50;
    auto* spec = app.add_subcommand("spec", "Prime spectrum as a DOT graph");
    spec->add_option("--ring", ring, "Ring specification")->required();
    spec->add_option("--prime-bound", spec_bound, "Largest rational prime listed for infinite spectra");

    std::string op;
    std::vector<std::string> operands;
    auto* ideal = app.add_subcommand("ideal", "h-ideal arithmetic");
    ideal->add_option("--ring", ring, "Ring specification")->required();
    ideal->add_option("op", op, "show|sum|product|quotient|radical|contains|prime|stable|list")->required();
    ideal->add_option("operands", operands, "Comma-separated generators, or an element for contains");

    std::string rational;
    auto* dv = app.add_subcommand("div", "Principal divisor of a rational");
    dv->add_option("f", rational, "Nonzero rational")->required();

    std::string tower;
    auto* divcheck = app.add_subcommand("divcheck", "Monotone/bounded checks on a divisor tower");
    divcheck->add_option("file", tower, "Tower JSON")->required();

    std::string golden_dir;
    bool update = false;
    auto* golden = app.add_subcommand("golden", "Regenerate and compare the golden enumeration tables");
    golden->add_option("--dir", golden_dir, "Golden directory (default GENRING_GOLDEN_DIR)");
    golden->add_flag("--update", update, "Overwrite tables that differ");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*axioms) return cmd_axioms(o, ring, out);
        if (*trees) return cmd_trees(o, trees_n, out);
        if (*nabla) {
            if (*fopt) return cmd_nabla_fiber(o, fiber, out);
            if (*eopt) return cmd_nabla_equiv(o, equiv[0], equiv[1], out);
            err << "error: nabla needs --fiber or --equiv\n";
            return kUsage;
        }
        if (*spec) return cmd_spec(o, ring, spec_bound, out);
        if (*ideal) return cmd_ideal(o, ring, op, operands, out);
        if (*dv) return cmd_div(o, rational, out);
        if (*divcheck) return cmd_divcheck(o, tower, out);
        if (*golden) return cmd_golden(o, golden_dir, update, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ClosureError& e) {
        err << "unknown: " << e.what() << "\n";
        return kUnknown;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace genring
