// qellr: command-line front end. JSON on stdout, diagnostics on stderr.
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qellr/enhanced.hpp"
#include "qellr/mackey.hpp"
#include "qellr/power.hpp"
#include "qellr/qellr.hpp"
#include "qellr/tate.hpp"
#include "qellr/transgression.hpp"
#include "qellr/verify.hpp"

using json = nlohmann::ordered_json;
using namespace qellr;

namespace {

const char* kVersion = "0.1.0";

// Input that is not valid JSON or does not follow the documented schema.
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    bool pretty = false;
    int jobs = 1;
    int64_t precision = 12;
    uint64_t seed = 0;
    std::string command;
    json inputs = json::object();
    json omega = nullptr;
    json levels = json::array();
    json seeds = json::array();
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string read_file(Context& ctx, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    ctx.inputs[path] = sha256_hex(ss.str());
    return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedInput(what + ": " + e.what());
    }
}

// Inline JSON or a file path.
json load_json(Context& ctx, const std::string& arg, const std::string& what) {
    std::string s = arg;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    if (!s.empty() && (s.front() == '{' || s.front() == '[')) return parse_json_text(s, what);
    return parse_json_text(read_file(ctx, arg), what);
}

template <class T>
T field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) throw MalformedInput(what + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw MalformedInput(what + ": bad \"" + key + "\": " + e.what());
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

// ---- groups ----

GroupPtr group_from_json(const json& j) {
    const std::string what = "group JSON";
    std::vector<int> pi;
    if (j.contains("table")) {
        int n = field<int>(j, "order", what);
        auto rows = field<std::vector<std::vector<int>>>(j, "table", what);
        if (static_cast<int>(rows.size()) != n) throw MalformedInput(what + ": table has wrong size");
        std::vector<int> table;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != n) throw MalformedInput(what + ": table row has wrong size");
            table.insert(table.end(), r.begin(), r.end());
        }
        pi = j.contains("pi") ? field<std::vector<int>>(j, "pi", what) : std::vector<int>(n, 1);
        check_order_bound(n, "group");
        return std::make_shared<GradedGroup>(n, std::move(table), std::move(pi), j.value("name", "table"));
    }
    if (!j.contains("generators")) throw MalformedInput(what + ": needs \"table\" or \"generators\"");
    const json& gens = j.at("generators");
    if (!gens.is_array()) throw MalformedInput(what + ": generators must be an array");
    // each generator: image list [1,2,0] or disjoint cycles [[0,1,2],[3,4]]
    std::vector<std::vector<std::vector<int>>> cyc;
    int degree = 0;
    for (const auto& g : gens) {
        if (!g.is_array()) throw MalformedInput(what + ": generator must be an array");
        std::vector<std::vector<int>> cs;
        bool as_cycles = !g.empty() && g[0].is_array();
        try {
            if (as_cycles) {
                for (const auto& c : g) cs.push_back(c.get<std::vector<int>>());
            } else {
                cs.push_back({-1});
                auto img = g.get<std::vector<int>>();
                cs.push_back(img);
            }
        } catch (const json::exception& e) {
            throw MalformedInput(what + ": " + e.what());
        }
        for (size_t a = (as_cycles ? 0 : 1); a < cs.size(); ++a)
            for (int x : cs[a]) degree = std::max(degree, x + 1);
        if (!as_cycles) degree = std::max(degree, static_cast<int>(cs[1].size()));
        cyc.push_back(cs);
    }
    std::vector<std::vector<int>> perms;
    for (const auto& cs : cyc) {
        std::vector<int> p(degree);
        for (int x = 0; x < degree; ++x) p[x] = x;
        if (!cs.empty() && cs[0] == std::vector<int>{-1}) {
            for (size_t x = 0; x < cs[1].size(); ++x) p[x] = cs[1][x];
        } else {
            for (const auto& c : cs)
                for (size_t k = 0; k < c.size(); ++k) p[c[k]] = c[(k + 1) % c.size()];
        }
        perms.push_back(p);
    }
    pi = j.contains("pi_of_generators") ? field<std::vector<int>>(j, "pi_of_generators", what)
                                        : std::vector<int>(perms.size(), 1);
    return build_group(perms, pi, j.value("name", "generated"));
}

GroupPtr load_group(Context& ctx, const std::string& spec) {
    GroupPtr g;
    std::ifstream probe(spec);
    if (probe.good() || spec.find('{') != std::string::npos)
        g = group_from_json(load_json(ctx, spec, "group JSON"));
    else
        g = group_from_spec(spec);
    ctx.omega = g->graded() ? json(g->omega()) : json(nullptr);
    return g;
}

// ---- cochains ----

Cochain cochain_from_json(const json& j, const GroupPtr& G) {
    const std::string what = "cocycle JSON";
    int deg = field<int>(j, "degree", what);
    int64_t m = field<int64_t>(j, "modulus", what);
    bool tw = j.contains("twisted") ? field<bool>(j, "twisted", what) : false;
    if (deg < 0 || deg > 4 || m < 1) throw MalformedInput(what + ": degree must be 0..4 and modulus positive");
    int64_t n = G->order(), count = 1;
    for (int k = 0; k < deg; ++k) count *= n;
    std::vector<int64_t> dense(count, 0);
    if (j.contains("entries")) {
        if (!j.at("entries").is_array()) throw MalformedInput(what + ": entries must be an array");
        for (const auto& e : j.at("entries")) {
            auto t = field<std::vector<int>>(e, "tuple", what);
            int64_t num = field<int64_t>(e, "num", what);
            int64_t den = e.contains("den") ? field<int64_t>(e, "den", what) : m;
            if (static_cast<int>(t.size()) != deg) throw MalformedInput(what + ": tuple of wrong length");
            if (den == 0 || (num * m) % den != 0) throw MalformedInput(what + ": value not in (1/m)Z/Z");
            int64_t idx = 0;
            for (int x : t) {
                if (x < 0 || x >= n) throw MalformedInput(what + ": element out of range");
                idx = idx * n + x;
            }
            dense[idx] = mod(num * m / den, m);
        }
    }
    return Cochain(G, deg, tw, m, std::move(dense));
}

json cochain_to_json(const Cochain& c) {
    json entries = json::array();
    int n = c.base()->order();
    for_each_tuple(n, c.degree(), [&](const int* t) {
        int64_t v = c.at(t);
        if (v == 0) return;
        Rational r(v, c.modulus());
        entries.push_back({{"tuple", std::vector<int>(t, t + c.degree())}, {"num", r.num()}, {"den", r.den()}});
    });
    return {{"degree", c.degree()}, {"modulus", c.modulus()}, {"twisted", c.twisted()}, {"entries", entries}};
}

// --twist FILE, or --twist random:M for a seeded random cocycle of the given degree
std::optional<Cochain> load_twist(Context& ctx, const std::string& arg, const GroupPtr& G, int degree, bool twisted) {
    if (arg.empty()) return std::nullopt;
    if (arg.rfind("random:", 0) == 0) {
        int64_t m = std::stoll(arg.substr(7));
        ctx.seeds.push_back(ctx.seed);
        return random_cocycle(G, degree, twisted, m, ctx.seed);
    }
    Cochain c = cochain_from_json(load_json(ctx, arg, "cocycle JSON"), G);
    if (c.degree() != degree) throw std::invalid_argument("twist must have degree " + std::to_string(degree));
    return c;
}

// ---- values ----

json cyc_json(const Cyc& c) {
    Cyc r = c.reduced();
    if (r.is_rational()) return r.rational().str();
    json coeffs = json::array();
    for (const auto& q : r.coeffs()) coeffs.push_back(q.str());
    return {{"order", r.order()}, {"coeffs", coeffs}};
}

json series_json(const QSeries& s) {
    json out = json::array();
    for (const auto& [e, v] : s) out.push_back({{"q_exponent", e.str()}, {"coeff", cyc_json(v)}});
    return out;
}

json lpoly_json(const LPoly& p, const Rational& shift) {
    json out = json::array();
    for (auto [k, v] : p) out.push_back({{"q_exponent", (Rational(k) + shift).str()}, {"coeff", v}});
    return out;
}

// ---- classes ----

json space_json(const QEllRSpace& S) {
    json comps = json::array();
    for (size_t i = 0; i < S.comps.size(); ++i) {
        const QComponent& c = S.comps[i];
        json basis = json::array();
        for (int b = 0; b < c.rank(); ++b) {
            const QBasis& q = c.basis[b];
            basis.push_back({{"irrep_id", q.irrep},
                             {"real_type", real_type_name(q.type)},
                             {"q_exponent", q.lambda.str()},
                             {"degree", q.degree}});
        }
        json comp = {{"component", i},
                     {"g", S.embed.to_parent[c.g]},
                     {"point", c.point},
                     {"sign", c.sign},
                     {"level", c.o},
                     {"stabilizer_order", c.stabilizer.group->order()},
                     {"rank", c.rank()},
                     {"basis", basis}};
        comps.push_back(comp);
    }
    return {{"group", S.group->name()}, {"real", S.real}, {"twisted", S.twisted()}, {"rank", S.rank()},
            {"classes", comps}};
}

// {"terms": [{"comp": i, "basis": b, "power": k, "coeff": v}, ...]}
QClass class_from_json(const json& j, const QEllRSpace& S) {
    const std::string what = "class JSON";
    QClass x = zero_class(S);
    if (!j.contains("terms") || !j.at("terms").is_array()) throw MalformedInput(what + ": needs a \"terms\" array");
    for (const auto& t : j.at("terms")) {
        int i = field<int>(t, "comp", what), b = field<int>(t, "basis", what);
        int64_t k = t.contains("power") ? field<int64_t>(t, "power", what) : 0;
        int64_t v = t.contains("coeff") ? field<int64_t>(t, "coeff", what) : 1;
        if (i < 0 || i >= static_cast<int>(S.comps.size()) || b < 0 || b >= S.comps[i].rank())
            throw MalformedInput(what + ": basis element out of range");
        auto& p = x.c[i][b];
        p[k] += v;
        if (p[k] == 0) p.erase(k);
    }
    return x;
}

json class_json(const QEllRSpace& S, const std::vector<std::vector<LPoly>>& c) {
    json terms = json::array();
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t b = 0; b < c[i].size(); ++b)
            for (auto [k, v] : c[i][b])
                terms.push_back({{"comp", i},
                                 {"basis", b},
                                 {"power", k},
                                 {"coeff", v},
                                 {"q_exponent", (Rational(k) + S.comps[i].basis[b].lambda).str()}});
    return {{"terms", terms}};
}

QClass load_class(Context& ctx, const std::string& arg, const std::vector<std::string>& terms, const QEllRSpace& S) {
    QClass x = zero_class(S);
    if (!arg.empty()) x = class_from_json(load_json(ctx, arg, "class JSON"), S);
    for (const auto& t : terms) {
        auto v = parse_int_list(t);
        if (v.size() < 2 || v.size() > 4) throw std::invalid_argument("--term expects comp,basis[,power[,coeff]]");
        json j = {{"terms", {{{"comp", v[0]}, {"basis", v[1]}, {"power", v.size() > 2 ? v[2] : 0},
                              {"coeff", v.size() > 3 ? v[3] : 1}}}}};
        x = add(x, class_from_json(j, S));
    }
    return x;
}

// ---- tate points ----

json point_json(const TatePoint& p) {
    auto [sign, a] = p.xi.root_of_unity(p.N);
    return {{"xi", {{"sign", sign}, {"zeta", a}, {"q_num", p.xi.e.num()}, {"q_den", p.xi.e.den()}}}, {"i", p.i}};
}

TatePoint point_from_json(const json& j, int N) {
    const std::string what = "point JSON";
    json xi = j.contains("xi") ? j.at("xi") : json();
    int sign = xi.contains("sign") ? field<int>(xi, "sign", what) : 1;
    int64_t a = xi.contains("zeta") ? field<int64_t>(xi, "zeta", what) : 0;
    int64_t qn = xi.contains("q_num") ? field<int64_t>(xi, "q_num", what) : 0;
    int64_t qd = xi.contains("q_den") ? field<int64_t>(xi, "q_den", what) : 1;
    if (qd == 0 || (sign != 1 && sign != -1)) throw MalformedInput(what + ": bad sign or q_den");
    TatePoint p{N, TateUnit::make(sign, N, a, Rational(qn, qd)), field<int>(j, "i", what)};
    check_torsion_point(p);
    return p;
}

// ---- output ----

void pretty_print(std::ostream& o, const json& j, int indent, const std::string& key) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        if (!key.empty()) o << pad << key << ":\n";
        for (auto it = j.begin(); it != j.end(); ++it) pretty_print(o, it.value(), indent + (key.empty() ? 0 : 2), it.key());
    } else if (j.is_array()) {
        bool flat = true;
        for (const auto& e : j) flat = flat && !e.is_structured();
        if (flat) {
            o << pad << key << ": " << j.dump() << "\n";
        } else {
            o << pad << key << ":\n";
            int k = 0;
            for (const auto& e : j) pretty_print(o, e, indent + 2, "[" + std::to_string(k++) + "]");
        }
    } else {
        o << pad << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Context& ctx, const json& result) {
    json manifest = {{"command", ctx.command},   {"inputs", ctx.inputs}, {"omega", ctx.omega},
                     {"levels", ctx.levels},     {"seeds", ctx.seeds},   {"precision", ctx.precision},
                     {"library_version", kVersion}};
    json out = {{"manifest", manifest}, {"result", result}};
    if (ctx.pretty)
        pretty_print(std::cout, out, 0, "");
    else
        std::cout << out.dump() << "\n";
}

// ---- subcommands ----

json group_info(const GroupPtr& G, bool with_table) {
    json elems = json::array();
    for (int x = 0; x < G->order(); ++x) elems.push_back({{"index", x}, {"order", G->elem_order(x)}, {"pi", G->pi(x)}});
    json out = {{"name", G->name()},         {"order", G->order()}, {"exponent", G->exponent()},
                {"graded", G->graded()},     {"omega", G->graded() ? json(G->omega()) : json(nullptr)},
                {"kernel", G->kernel()},     {"elements", elems}};
    if (with_table) {
        json rows = json::array();
        for (int a = 0; a < G->order(); ++a) {
            std::vector<int> r(G->order());
            for (int b = 0; b < G->order(); ++b) r[b] = G->mul(a, b);
            rows.push_back(r);
        }
        out["table"] = rows;
    }
    return out;
}

json classes_json(const ClassData& cd) {
    json out = json::array();
    for (int c = 0; c < cd.count(); ++c)
        out.push_back({{"rep", cd.reps[c]}, {"size", cd.size(c)}, {"sign", cd.sign.empty() ? 1 : cd.sign[c]},
                       {"members", cd.members[c]}});
    return out;
}

json pairs_json(const std::vector<PairClass>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back({{"g", p.g}, {"h", p.h}, {"orbit_size", p.orbit_size}});
    return out;
}

json table_json(const CharacterTable& T) {
    json chars = json::array();
    for (int r = 0; r < T.count(); ++r) {
        json vals = json::array();
        for (const auto& v : T.chars[r]) vals.push_back(cyc_json(v));
        chars.push_back({{"degree", T.degree(r)}, {"values", vals}});
    }
    json classes = json::array();
    for (int c = 0; c < T.classes.count(); ++c)
        classes.push_back({{"rep", T.classes.reps[c]}, {"size", T.classes.size(c)}});
    return {{"group", T.group->name()}, {"exponent", T.exponent}, {"classes", classes}, {"characters", chars}};
}

json twisted_irreps_json(const TwistedIrreps& T) {
    json out = json::array();
    for (size_t r = 0; r < T.real.size(); ++r) {
        const auto& ri = T.real[r];
        out.push_back({{"real_irrep", r},
                       {"type", real_type_name(ri.type)},
                       {"complex_irreps", ri.a == ri.b ? json::array({ri.a}) : json::array({ri.a, ri.b})},
                       {"degree", T.degree(ri.a)},
                       {"indicator", T.indicator.empty() ? 0 : T.indicator[ri.a]}});
    }
    return out;
}

GSet gset_from_json(const json& j, const GradedGroup& G) {
    const std::string what = "G-set JSON";
    GSet X;
    X.size = field<int>(j, "size", what);
    auto act = field<std::vector<std::vector<int>>>(j, "act", what);
    if (static_cast<int>(act.size()) != G.order()) throw MalformedInput(what + ": one row per group element");
    for (const auto& r : act) {
        if (static_cast<int>(r.size()) != X.size) throw MalformedInput(what + ": row of wrong length");
        X.act.insert(X.act.end(), r.begin(), r.end());
    }
    validate_gset(G, X);
    return X;
}

bool tate_check(int N, json& out) {
    auto ax = check_group_axioms(N);
    auto ex = exactness_check(N);
    auto sp = check_split(N);
    auto tq = torsion_vs_qell(N);
    auto rf = real_fixed_points(N);
    auto pb = pullback_square(N);
    out = {{"N", N},
           {"points", ax.points},
           {"group_axioms", ax.all()},
           {"exactness", ex.all()},
           {"integral_b_N_surjective", ex.integral_surjective},
           {"inversion_diagram", ex.inversion_diagram},
           {"split_iso", sp.all()},
           {"involution_fixed_points", sp.fixed_points},
           {"two_torsion", sp.two_torsion},
           {"sheets_match_qell", tq.match},
           {"tate_relations", tq.tate_relations},
           {"qell_relations", tq.qell_relations},
           {"TR_fixed_points", rf.fixed},
           {"qellr_rank", rf.qellr_rank},
           {"real_fixed_points", rf.all()},
           {"pullback_square", pb.all()}};
    bool pass = ax.all() && ex.all() && sp.all() && tq.match && rf.all() && pb.all();
    out["pass"] = pass;
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    for (int i = 1; i < argc; ++i) ctx.command += (i > 1 ? " " : "") + std::string(argv[i]);

    CLI::App app{"Real quasi-elliptic cohomology of finite graded groups"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--pretty", ctx.pretty, "human-readable outline instead of JSON");
    app.add_option("--jobs", ctx.jobs, "worker threads for component construction")->check(CLI::Range(1, 256));
    app.add_option("--precision", ctx.precision, "truncation order for q-series")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", ctx.seed, "seed for random twists and samples");

    std::string group_spec, twist, class_arg, gset_arg, cosets, normal, point_a, point_b;
    std::vector<std::string> terms;
    bool with_table = false, pairs = false, complex = false, stringy = false, quick = false;
    int g_elem = 0, level = 1, N = 2;

    auto add_group = [&](CLI::App* s) { s->add_option("--group", group_spec, "family spec or JSON file")->required(); };

    auto* c_group = app.add_subcommand("group", "group structure");
    add_group(c_group);
    c_group->add_flag("--table", with_table, "include the multiplication table");

    auto* c_classes = app.add_subcommand("classes", "Real, kernel and ordinary conjugacy classes");
    add_group(c_classes);
    c_classes->add_flag("--pairs", pairs, "also list commuting pair classes");

    auto* c_trans = app.add_subcommand("transgress", "transgress a cocycle to every Real class");
    add_group(c_trans);
    c_trans->add_option("--twist", twist, "cocycle JSON (plain degree 3 or twisted degree 2)")->required();

    auto* c_chartab = app.add_subcommand("chartab", "character table of the kernel");
    add_group(c_chartab);

    auto* c_rr = app.add_subcommand("rr", "Real irreducibles of a twisted central extension");
    add_group(c_rr);
    c_rr->add_option("--twist", twist, "twisted degree-2 cocycle JSON or random:m");

    auto* c_mackey = app.add_subcommand("mackey", "Mackey decomposition over a normal subgroup");
    add_group(c_mackey);
    c_mackey->add_option("--normal", normal, "comma-separated elements of H")->required();
    c_mackey->add_option("--twist", twist, "twisted degree-2 cocycle JSON or random:m");

    auto* c_lambda = app.add_subcommand("lambda", "finite enhanced centralizer model");
    add_group(c_lambda);
    c_lambda->add_option("--g", g_elem, "element of the kernel")->required();
    c_lambda->add_option("--level", level, "level L, a multiple of |g|")->required();
    c_lambda->add_option("--twist", twist, "plain degree-3 cocycle JSON or random:m");
    c_lambda->add_flag("--complex", complex, "use C_G(g) instead of the Real centralizer");

    auto* c_qellr = app.add_subcommand("qellr", "quasi-elliptic cohomology");
    c_qellr->require_subcommand(1);
    auto add_space = [&](CLI::App* s) {
        add_group(s);
        s->add_option("--twist", twist, "plain degree-3 cocycle JSON or random:m");
        s->add_flag("--complex", complex, "complex theory of the kernel");
    };
    auto* q_point = c_qellr->add_subcommand("point", "classes of a point");
    add_space(q_point);
    auto* q_gset = c_qellr->add_subcommand("gset", "classes of a finite G-set");
    add_space(q_gset);
    q_gset->add_option("--gset", gset_arg, "G-set JSON {size, act}");
    q_gset->add_option("--cosets", cosets, "G/H for the comma-separated subgroup H");
    auto* q_tate = c_qellr->add_subcommand("tate", "Tate completion of a class, truncated at --precision");
    add_space(q_tate);
    q_tate->add_option("--class", class_arg, "class JSON {terms: [...]}");
    q_tate->add_option("--term", terms, "comp,basis[,power[,coeff]]");
    auto* q_char = c_qellr->add_subcommand("char", "character sheet of a class");
    add_space(q_char);
    q_char->add_option("--class", class_arg, "class JSON {terms: [...]}");
    q_char->add_option("--term", terms, "comp,basis[,power[,coeff]]");

    auto* c_tate = app.add_subcommand("tate", "Tate curve torsion points");
    c_tate->require_subcommand(1);
    auto* t_mul = c_tate->add_subcommand("mul", "product of two points");
    auto* t_inv = c_tate->add_subcommand("inv", "inverse of a point");
    auto* t_table = c_tate->add_subcommand("table", "all points over Z[q^{+-1/N}][zeta_N]");
    auto* t_check = c_tate->add_subcommand("check", "group law, exactness, splitting and comparisons");
    for (auto* s : {t_mul, t_inv, t_table, t_check}) s->add_option("--N", N, "torsion level")->required()->check(CLI::Range(1, 64));
    t_mul->add_option("--a", point_a, "point JSON")->required();
    t_mul->add_option("--b", point_b, "point JSON")->required();
    t_inv->add_option("--a", point_a, "point JSON")->required();

    auto* c_power = app.add_subcommand("power", "power operation P_N on point classes");
    add_group(c_power);
    c_power->add_option("--N", N, "power")->required()->check(CLI::Range(0, 16));
    c_power->add_option("--class", class_arg, "class JSON {terms: [...]}");
    c_power->add_option("--term", terms, "comp,basis[,power[,coeff]]");
    c_power->add_flag("--string", stringy, "stringy version truncated at --precision");
    c_power->add_flag("--complex", complex, "complex power operation of the kernel");

    auto* c_verify = app.add_subcommand("verify", "run the property suite");
    c_verify->add_flag("--quick", quick, "smaller samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        auto space = [&](const GroupPtr& G) {
            auto a = load_twist(ctx, twist, G, 3, false);
            const Cochain* ap = a ? &*a : nullptr;
            return complex ? qell_point(G, ap, ctx.jobs) : qellr_point(G, ap, ctx.jobs);
        };

        if (c_group->parsed()) {
            emit(ctx, group_info(load_group(ctx, group_spec), with_table));
        } else if (c_classes->parsed()) {
            auto G = load_group(ctx, group_spec);
            json out = {{"real", classes_json(real_classes(*G))},
                        {"kernel", classes_json(kernel_classes(*G))},
                        {"ordinary", classes_json(ordinary_classes(*G))}};
            if (pairs) {
                out["real_pairs"] = pairs_json(real_pair_classes(*G));
                out["kernel_pairs"] = pairs_json(ordinary_pair_classes(*G));
            }
            emit(ctx, out);
        } else if (c_trans->parsed()) {
            auto G = load_group(ctx, group_spec);
            Cochain c = cochain_from_json(load_json(ctx, twist, "cocycle JSON"), G);
            bool plain3 = c.degree() == 3 && !c.twisted(), twisted2 = c.degree() == 2 && c.twisted();
            if (!plain3 && !twisted2) throw std::invalid_argument("transgress needs a plain 3-cochain or twisted 2-cochain");
            GroupoidCochain tau = G->graded() ? (plain3 ? real_transgress(c) : real_transgress_ref(c)) : transgress(c);
            tau = tau.materialized();
            ClassData rc = G->graded() ? real_classes(*G) : kernel_classes(*G);
            json bundle = json::array();
            for (int k = 0; k < rc.count(); ++k) {
                int g = rc.reps[k];
                Subgroup C = make_subgroup(G, G->graded() ? real_centralizer(*G, g) : kernel_centralizer(*G, g));
                Cochain comp = component(tau, g, C);
                bundle.push_back({{"g", g}, {"sign", rc.sign[k]}, {"centralizer", C.to_parent},
                                  {"cocycle", cochain_to_json(comp)}, {"is_cocycle", is_cocycle(comp)}});
            }
            emit(ctx, {{"source_degree", c.degree()}, {"classes", bundle}});
        } else if (c_chartab->parsed()) {
            auto G = load_group(ctx, group_spec);
            Subgroup K = make_subgroup(G, G->kernel());
            emit(ctx, {{"kernel", K.to_parent}, {"table", table_json(*character_table(K.group))}});
        } else if (c_rr->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto th = load_twist(ctx, twist, G, 2, G->graded());
            auto E = central_extension(th ? *th : zero_cochain(G, 2, G->graded(), 1));
            auto T = twisted_irreps(E);
            emit(ctx, {{"extension_order", E->group->order()},
                       {"modulus", E->m},
                       {"real_irreps", twisted_irreps_json(T)},
                       {"count", real_irrep_count(T)}});
        } else if (c_mackey->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto th = load_twist(ctx, twist, G, 2, G->graded());
            auto D = mackey_decompose(G, parse_int_list(normal), th ? &*th : nullptr);
            json orbits = json::array();
            for (const auto& o : D.orbits)
                orbits.push_back({{"members", o.members},
                                  {"stabilizer", o.stabilizer},
                                  {"quotient_order", o.quotient.group->order()},
                                  {"nu", o.nu ? cochain_to_json(*o.nu) : json(nullptr)},
                                  {"count_nu", o.count_nu},
                                  {"count_over", o.count_over}});
            emit(ctx, {{"orbits", orbits}, {"count_total", D.count_total}, {"identity_holds", D.identity_holds()}});
        } else if (c_lambda->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto a = load_twist(ctx, twist, G, 3, false);
            ctx.levels.push_back(level);
            auto M = enhanced_model(G, g_elem, level, a ? &*a : nullptr, !complex);
            json irr = json::array();
            for (const auto& r : model_irreps(M))
                irr.push_back({{"rho", r.rho}, {"q_exponent", r.lambda.str()}, {"degree", r.degree}, {"indicator", r.indicator}});
            emit(ctx, {{"g", M.g},
                       {"level", M.level},
                       {"d", M.d},
                       {"lift_order", M.o},
                       {"modulus", M.m},
                       {"order", M.group->order()},
                       {"centralizer_order", M.centralizer.group->order()},
                       {"real_central", check_real_central(M)},
                       {"o2_kernel", check_o2_kernel(M)},
                       {"irreps", irr}});
        } else if (q_point->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto S = space(G);
            for (const auto& c : S.comps) ctx.levels.push_back(c.o);
            json out = space_json(S);
            if (!S.twisted()) {
                try {
                    auto P = cyclic_presentation(S);
                    for (size_t i = 0; i < P.size(); ++i) {
                        out["classes"][i]["generators"] = P[i].generators;
                        out["classes"][i]["relations"] = P[i].relations;
                        out["classes"][i]["ground"] = P[i].ground;
                    }
                } catch (const std::invalid_argument&) {
                    // kernel not cyclic: no presentation
                }
            }
            emit(ctx, out);
        } else if (q_gset->parsed()) {
            auto G = load_group(ctx, group_spec);
            GSet X;
            if (!cosets.empty()) {
                Subgroup H = make_subgroup(G, parse_int_list(cosets));
                X = induce_gset(H, point_gset(*H.group));
            } else if (!gset_arg.empty()) {
                X = gset_from_json(load_json(ctx, gset_arg, "G-set JSON"), *G);
            } else {
                X = point_gset(*G);
            }
            auto a = load_twist(ctx, twist, G, 3, false);
            auto S = complex ? qell_gset(G, X, a ? &*a : nullptr, ctx.jobs) : qellr_gset(G, X, a ? &*a : nullptr, ctx.jobs);
            emit(ctx, space_json(S));
        } else if (q_tate->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto S = space(G);
            QClass x = load_class(ctx, class_arg, terms, S);
            auto T = tate_completion(S, x, ctx.precision);
            json out = class_json(S, T.c);
            out["truncation"] = T.truncation;
            out["rotation_condition"] = T.rotation_ok;
            emit(ctx, out);
        } else if (q_char->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto S = space(G);
            QClass x = load_class(ctx, class_arg, terms, S);
            Sheet sh = character_sheet(S, x);
            json vals = json::array();
            for (size_t k = 0; k < sh.pairs.size(); ++k)
                vals.push_back({{"g", S.embed.to_parent[sh.pairs[k].g]},
                                {"h", S.embed.to_parent[sh.pairs[k].h]},
                                {"series", series_json(sh.values[k])}});
            emit(ctx, {{"character", S.real ? "ph" : "ch"}, {"values", vals}});
        } else if (t_mul->parsed()) {
            TatePoint a = point_from_json(load_json(ctx, point_a, "point JSON"), N);
            TatePoint b = point_from_json(load_json(ctx, point_b, "point JSON"), N);
            emit(ctx, {{"N", N}, {"product", point_json(multiply(a, b))}});
        } else if (t_inv->parsed()) {
            TatePoint a = point_from_json(load_json(ctx, point_a, "point JSON"), N);
            emit(ctx, {{"N", N}, {"inverse", point_json(invert(a))}});
        } else if (t_table->parsed()) {
            json pts = json::array();
            for (const auto& p : torsion_points(N, split_ring(N))) {
                auto [j, i] = split_iso(p);
                pts.push_back({{"point", point_json(p)}, {"split", {j, i}}, {"inverse", point_json(invert(p))}});
            }
            emit(ctx, {{"N", N}, {"points", pts}, {"a4", tate_a4(static_cast<int>(ctx.precision))},
                       {"a6", tate_a6(static_cast<int>(ctx.precision))}});
        } else if (t_check->parsed()) {
            json out;
            bool pass = tate_check(N, out);
            emit(ctx, out);
            return pass ? 0 : 1;
        } else if (c_power->parsed()) {
            auto G = load_group(ctx, group_spec);
            auto S = complex ? qell_point(G, nullptr, ctx.jobs) : qellr_point(G, nullptr, ctx.jobs);
            if (!twist.empty()) throw std::invalid_argument("power operations are implemented for untwisted classes only");
            QClass x = load_class(ctx, class_arg, terms, S);
            auto T = power_space(S, N, ctx.jobs);
            json out = {{"N", N}, {"target", space_json(T.space)}};
            if (T.wreath) {
                json perms = json::array();
                for (const auto& c : T.space.comps)
                    perms.push_back({{"components", T.wreath->comps[c.g]}, {"permutation", T.wreath->perms[c.g]}});
                out["target_elements"] = perms;
            }
            if (stringy) {
                auto P = stringy_power(S, x, T, ctx.precision);
                out["class"] = class_json(T.space, P.c);
                out["truncation"] = P.truncation;
            } else {
                out["class"] = class_json(T.space, power_operation(S, x, T).c);
            }
            emit(ctx, out);
        } else if (c_verify->parsed()) {
            VerifyOptions opt;
            opt.quick = quick;
            opt.jobs = ctx.jobs;
            opt.seed = ctx.seed;
            auto results = run_verify(opt);
            bool all = true;
            for (const auto& r : results) {
                all = all && r.pass;
                std::fprintf(stderr, "criterion %d: %.2fs\n", r.id, r.seconds);
            }
            std::cout << "qellr verify" << (quick ? " --quick" : "") << " seed " << ctx.seed << "\n"
                      << render_report(results) << (all ? "ALL PASS" : "FAILURES") << "\n";
            return all ? 0 : 1;
        }
    } catch (const MalformedInput& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const OrderBoundExceeded& e) {
        std::cerr << "order bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
