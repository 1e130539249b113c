#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thh/acceptance.hpp"
#include "thh/adams.hpp"
#include "thh/bokstedt.hpp"
#include "thh/cache.hpp"
#include "thh/fixtures.hpp"
#include "thh/hochschild.hpp"
#include "thh/steenrod.hpp"

using namespace thh;
using ojson = nlohmann::ordered_json;
using Dims = std::map<std::pair<int, int>, long>;

namespace {

constexpr int kMaxDeg = 128;

enum Exit { kOk = 0, kFail = 1, kBadArgs = 2, kRangeTooSmall = 3 };

struct BadArgs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    int p = 2;
    int maxdeg = -1;
    std::string format = "table";
    std::string cache;
    int jobs = 1;
    int maxdeg_or(int d) const { return maxdeg < 0 ? d : maxdeg; }
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        auto a = tok.find_first_not_of(' '), b = tok.find_last_not_of(' ');
        if (a != std::string::npos) out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
}

void need_format(const Common& c, std::initializer_list<const char*> ok)
{
    for (auto f : ok)
        if (c.format == f) return;
    throw BadArgs("format " + c.format + " is not available for this command");
}

ojson dims_json(const Dims& d, const char* a, const char* b)
{
    ojson arr = ojson::array();
    for (auto& [k, v] : d)
        if (v) arr.push_back({{a, k.first}, {b, k.second}, {"dim", v}});
    return arr;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

SubalgebraSpec sub_of(const std::string& s)
{
    try {
        return SubalgebraSpec::parse(s);
    }
    catch (const std::exception& e) {
        throw BadArgs(e.what());
    }
}

SteenrodElement element_of(const std::string& s)
{
    try {
        return parse_steenrod(s);
    }
    catch (const std::exception& e) {
        throw BadArgs(e.what());
    }
}

/* ---- steenrod ---- */

struct SteenrodArgs {
    std::string sub = "A";
    int degree = -1;
    std::string ideal, source_ideal = "Sq1,Sq2Sq3", target_ideal = "Sq1,Sq2", map = "Sq4";
    int shift = -1;
    bool total = false;
    std::string element, dual;
};

int cmd_basis(const Common& c, const SteenrodArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    if (a.degree < 0) throw BadArgs("--degree is required");
    auto spec = sub_of(a.sub);
    auto b = cached_steenrod_basis(spec, a.degree, c.cache);
    if (c.format == "json") {
        ojson l = ojson::array();
        for (auto& x : b) l.push_back(to_string(x));
        emit({{"command", "steenrod basis"}, {"subalgebra", spec.name()}, {"degree", a.degree}, {"dim", b.size()}, {"basis", l}});
    }
    else if (c.format == "csv") {
        std::cout << "degree,element\n";
        for (auto& x : b) std::cout << a.degree << "," << to_string(x) << "\n";
    }
    else {
        std::cout << b.size() << "\n";
        for (auto& x : b) std::cout << "  " << to_string(x) << "\n";
    }
    return kOk;
}

int cmd_rank(const Common& c, const SteenrodArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    auto spec = sub_of(a.sub);
    long r = 0;
    ojson by = ojson::array();
    if (a.degree >= 0)
        r = (long)cached_steenrod_basis(spec, a.degree, c.cache).size();
    else {
        if (!spec.finite()) throw BadArgs("the full algebra needs --degree");
        for (int d = 0; d <= spec.top_degree(); ++d) {
            long k = (long)cached_steenrod_basis(spec, d, c.cache).size();
            if (k) by.push_back({{"degree", d}, {"dim", k}});
            r += k;
        }
    }
    if (c.format == "json") {
        ojson j{{"command", "steenrod rank"}, {"subalgebra", spec.name()}};
        if (a.degree >= 0) j["degree"] = a.degree;
        j["rank"] = r;
        if (a.degree < 0) j["by_degree"] = by;
        emit(j);
    }
    else if (c.format == "csv")
        std::cout << "subalgebra,rank\n" << spec.name() << "," << r << "\n";
    else
        std::cout << r << "\n";
    return kOk;
}

std::vector<SteenrodElement> ideal_of(const std::string& s)
{
    std::vector<SteenrodElement> out;
    for (auto& t : split(s, ',')) out.push_back(element_of(t));
    return out;
}

int cmd_quotient(const Common& c, const SteenrodArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    auto spec = sub_of(a.sub);
    if (!spec.finite()) throw BadArgs("quotients need a finite subalgebra");
    auto M = quotient_module(spec, ideal_of(a.ideal));
    auto s = M.series();
    if (c.format == "json") {
        ojson ser = ojson::array();
        for (auto& [d, v] : s)
            if (v) ser.push_back({{"degree", d}, {"dim", v}});
        ojson j{{"command", "steenrod quotient"}, {"subalgebra", spec.name()}, {"ideal", split(a.ideal, ',')}, {"total_rank", M.total()}};
        if (!a.total) j["series"] = ser;
        emit(j);
    }
    else if (c.format == "csv") {
        std::cout << "degree,dim\n";
        for (auto& [d, v] : s)
            if (v) std::cout << d << "," << v << "\n";
    }
    else if (a.total)
        std::cout << M.total() << "\n";
    else {
        for (auto& [d, v] : s)
            if (v) std::cout << d << ": " << v << "\n";
        std::cout << "total " << M.total() << "\n";
    }
    return kOk;
}

int cmd_kernel(const Common& c, const SteenrodArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    auto spec = sub_of(a.sub == "A" ? "A2" : a.sub);
    auto f = element_of(a.map);
    int shift = a.shift >= 0 ? a.shift : f.degree();
    auto src = quotient_module(spec, ideal_of(a.source_ideal));
    auto tgt = quotient_module(spec, ideal_of(a.target_ideal));
    auto K = module_map_kernel(f, src, shift, tgt);
    std::map<int, std::vector<std::string>> gens;
    for (auto& [d, dg] : K.kernel.degs)
        for (int i = 0; i < (int)dg.reps.size(); ++i) gens[d + shift].push_back(to_string(K.kernel.rep(d, i)));
    if (c.format == "json") {
        ojson ks = ojson::array();
        for (auto& [d, v] : gens) ks.push_back({{"degree", d}, {"elements", v}});
        ojson cs = ojson::array();
        for (auto& [d, v] : K.cokernel_series)
            if (v) cs.push_back({{"degree", d}, {"dim", v}});
        emit({{"command", "steenrod kernel"}, {"subalgebra", spec.name()}, {"map", to_string(f)}, {"shift", shift},
              {"kernel_rank", K.kernel.total()}, {"cokernel_rank", K.cokernel_rank}, {"kernel", ks}, {"cokernel", cs}});
    }
    else if (c.format == "csv") {
        std::cout << "degree,element\n";
        for (auto& [d, v] : gens)
            for (auto& e : v) std::cout << d << "," << e << "\n";
    }
    else {
        std::cout << "kernel rank " << K.kernel.total() << ", cokernel rank " << K.cokernel_rank << "\n";
        for (auto& [d, v] : gens) {
            std::cout << d << ":";
            for (auto& e : v) std::cout << "  " << e;
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_pair(const Common& c, const SteenrodArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    if (a.element.empty() || a.dual.empty()) throw BadArgs("--element and --dual are required");
    auto x = element_of(a.element);
    int d = x.degree();
    if (d < 0 && !x.zero()) throw BadArgs("element is not homogeneous");
    const auto& D = dual_steenrod(2, std::max(d, 1) + 40);
    Lin<Mono> m;
    try {
        m = D.parse(a.dual, false);
    }
    catch (const std::exception& e) {
        throw BadArgs(e.what());
    }
    int v = 0;
    for (auto& [mono, k] : m)
        if (D.alg.degree(mono) == d) v ^= pairing(D, x, mono) & k & 1;
    if (c.format == "json")
        emit({{"command", "steenrod pair"}, {"element", to_string(x)}, {"dual", a.dual}, {"value", v}});
    else if (c.format == "csv")
        std::cout << "element,dual,value\n" << to_string(x) << "," << a.dual << "," << v << "\n";
    else
        std::cout << v << "\n";
    return kOk;
}

/* ---- hh ---- */

struct HHArgs {
    std::string preset, generators, presentation;
    int degree = -1, qmax = -1;
};

Kind kind_of(const std::string& k)
{
    if (k == "poly" || k == "polynomial" || k == "P") return Kind::Polynomial;
    if (k == "ext" || k == "exterior" || k == "E") return Kind::Exterior;
    if (k == "dp" || k == "divided" || k == "Gamma") return Kind::DividedPower;
    throw BadArgs("unknown generator kind " + k);
}

int cmd_hh(const Common& c, const HHArgs& a)
{
    need_format(c, {"table", "json", "csv"});
    std::vector<GeneratorSpec> gens;
    int N = c.maxdeg_or(12);
    int p = c.p;
    if (!a.presentation.empty()) {
        if (!a.preset.empty() || !a.generators.empty())
            throw BadArgs("--presentation excludes --preset and --generators");
        std::ifstream in(a.presentation);
        if (!in) throw BadArgs("cannot read " + a.presentation);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            if (j.contains("p")) p = j.at("p").get<int>();
            for (auto& g : j.at("generators")) {
                GeneratorSpec s;
                s.name = g.at("name").get<std::string>();
                s.degree = g.at("degree").get<int>();
                std::string k = g.at("kind").get<std::string>();
                s.kind = k == "truncated" ? Kind::Truncated : kind_of(k);
                if (g.contains("height")) s.height = g.at("height").get<int>();
                if (s.degree <= 0) throw BadArgs("generator degrees must be positive");
                gens.push_back(s);
            }
        }
        catch (const nlohmann::json::exception& e) {
            throw BadArgs("bad presentation file: " + std::string(e.what()));
        }
        if (gens.empty()) throw BadArgs("presentation has no generators");
    }
    else if (a.preset == "idempotent") {
        if (!a.generators.empty()) throw BadArgs("--preset and --generators are exclusive");
        gens.push_back({"u", 0, Kind::Truncated, 2, 0, true});
        N = 0;
    }
    else if (a.preset == "poly" || a.preset == "ext") {
        gens.push_back({"x", a.degree > 0 ? a.degree : (a.preset == "poly" ? 2 : 1), kind_of(a.preset)});
    }
    else if (!a.preset.empty())
        throw BadArgs("unknown preset " + a.preset);
    else {
        for (auto& g : split(a.generators, ',')) {
            auto f = split(g, ':');
            if (f.size() != 3) throw BadArgs("generator must be name:degree:kind, got " + g);
            int d = 0;
            try {
                d = std::stoi(f[1]);
            }
            catch (...) {
                throw BadArgs("bad degree in " + g);
            }
            if (d <= 0) throw BadArgs("generator degrees must be positive");
            gens.push_back({f[0], d, kind_of(f[2])});
        }
        if (gens.empty()) throw BadArgs("give --preset or --generators");
    }
    int qmax = a.qmax >= 0 ? a.qmax : (a.preset == "idempotent" ? 6 : N);
    AlgebraPresentation A = [&] {
        try {
            return AlgebraPresentation(p, gens, N);
        }
        catch (const std::invalid_argument& e) {
            throw BadArgs(e.what());
        }
    }();
    auto hh = hh_homology(A, N, qmax);
    std::map<int, long> tot;
    for (int q = 0; q <= qmax; ++q) tot[q] = 0;
    for (auto& [k, v] : hh.dims) tot[k.first] += v;
    if (c.format == "json") {
        ojson g = ojson::array();
        for (auto& s : gens) g.push_back({{"name", s.name}, {"degree", s.degree}, {"kind", kind_name(s.kind)}});
        ojson t = ojson::array();
        for (auto& [q, v] : tot) t.push_back({{"q", q}, {"dim", v}});
        emit({{"command", "hh compute"}, {"p", p}, {"N", N}, {"qmax", qmax}, {"generators", g},
              {"dims", dims_json(hh.dims, "q", "t")}, {"totals", t}});
    }
    else if (c.format == "csv") {
        std::cout << "q,t,dim\n";
        for (auto& [k, v] : hh.dims)
            if (v) std::cout << k.first << "," << k.second << "," << v << "\n";
    }
    else {
        for (auto& [q, v] : tot) {
            std::cout << "HH_" << q << ": " << v;
            std::string sep = "  (";
            for (auto& [k, d] : hh.dims)
                if (k.first == q && d) {
                    std::cout << sep << "t=" << k.second << ":" << d;
                    sep = " ";
                }
            std::cout << (sep == " " ? ")" : "") << "\n";
        }
    }
    return kOk;
}

/* ---- bokstedt ---- */

int cmd_bokstedt(const Common& c, const std::string& spectrum)
{
    need_format(c, {"table", "json", "csv"});
    int N = c.maxdeg_or(40);
    if (!catalog_has(spectrum, c.p)) throw BadArgs("no catalog entry for " + spectrum + " at p = " + std::to_string(c.p));
    THHResult R;
    try {
        R = thh_homology(spectrum, c.p, N);
    }
    catch (const StageError& e) {
        std::cerr << "thhforge: stage " << e.stage << " failed: " << e.what() << "\n";
        return kFail;
    }
    const SSPage& last = R.pages.empty() ? R.e2 : R.pages.back();
    const auto& A = R.abutment.alg;
    if (c.format == "json") {
        ojson pages = ojson::array();
        for (auto& P : R.pages) pages.push_back({{"r", P.r}, {"dims", dims_json(P.bigraded(), "s", "t")}});
        ojson gens = ojson::array(), co = ojson::array();
        for (auto& g : A.gens) {
            ojson e{{"name", g.name}, {"degree", g.degree}, {"kind", kind_name(g.kind)}};
            if (g.kind == Kind::Truncated) e["height"] = g.height;
            e["filtration"] = g.filtration;
            gens.push_back(e);
            if (g.base || g.dp_family >= 0 && g.dp_index > 0) continue;
            ojson terms = ojson::array();
            for (auto& [l, r] : coaction_terms(R.abutment, c.p, N, g.name)) terms.push_back({{"left", l}, {"right", r}});
            co.push_back({{"generator", g.name}, {"terms", terms}});
        }
        ojson obs = ojson::array();
        for (auto& o : R.obstructions)
            obs.push_back({{"source", o.source}, {"degree", o.source_degree}, {"r", o.r}, {"dim", o.dim}});
        ojson e2gens = ojson::array();
        for (auto& g : R.e2.alg.gens) e2gens.push_back(g.name);
        emit({{"command", "bokstedt run"},
              {"spectrum", spectrum},
              {"p", c.p},
              {"N", N},
              {"e2", {{"generators", e2gens}, {"dims", dims_json(R.e2.bigraded(), "s", "t")}}},
              {"pages", pages},
              {"einf", {{"r", last.r}, {"dims", dims_json(last.bigraded(), "s", "t")}}},
              {"collapse_at_e2", R.collapse_at_e2},
              {"obstructions", obs},
              {"certified", R.certified},
              {"abutment", {{"generators", gens}, {"series", R.series}, {"coaction", co}}},
              {"matches_closed_form", R.matches_closed_form}});
    }
    else if (c.format == "csv") {
        std::cout << "degree,dim\n";
        for (int d = 0; d < (int)R.series.size(); ++d) std::cout << d << "," << R.series[d] << "\n";
    }
    else {
        std::cout << "THH(" << spectrum << ") at p = " << c.p << " through degree " << N << "\n";
        std::cout << "E2 generators:";
        for (auto& g : R.e2.alg.gens) std::cout << " " << g.name;
        std::cout << "\n";
        for (auto& P : R.pages) {
            std::cout << "E" << P.r << ":";
            for (auto& n : P.notes) std::cout << " " << n;
            std::cout << "\n";
        }
        std::cout << (R.collapse_at_e2 ? "collapses at E2" : "does not collapse at E2") << ", "
                  << R.obstructions.size() << " obstructions, certified " << (R.certified ? "yes" : "no") << "\n";
        std::cout << "abutment:";
        for (auto& g : A.gens)
            if (!g.base) std::cout << " " << g.name << "(" << g.degree << "," << kind_name(g.kind) << ")";
        std::cout << "\nseries:";
        for (auto v : R.series) std::cout << " " << v;
        std::cout << "\nclosed form " << (R.matches_closed_form ? "matches" : "DIFFERS") << "\n";
    }
    return R.matches_closed_form && R.certified ? kOk : kFail;
}

/* ---- adams ---- */

int cmd_adams(const Common& c, const std::string& target, const std::string& chart)
{
    need_format(c, {"table", "json", "csv", "svg"});
    int N = c.maxdeg_or(60);
    std::string t;
    try {
        t = canonical_target(target);
    }
    catch (const std::exception& e) {
        throw BadArgs(e.what());
    }
    auto R = adams_pipeline(t, N);
    auto table = homotopy_table(R);
    if (!chart.empty()) {
        std::ofstream out(chart);
        if (!out) throw std::runtime_error("cannot write " + chart);
        out << chart_svg(R);
    }
    if (c.format == "json") {
        ojson tab = ojson::array();
        for (int d = 0; d <= N; ++d) {
            ojson g = ojson::array();
            if (table.count(d))
                for (auto& e : table.at(d)) g.push_back({{"label", e.label}, {"torsion", e.torsion < 0 ? ojson(nullptr) : ojson(e.torsion)}});
            tab.push_back({{"degree", d}, {"generators", g}});
        }
        ojson pages = ojson::array();
        for (auto& P : R.pages) pages.push_back({{"r", P.r}, {"dims", dims_json(P.dims, "s", "stem")}});
        emit({{"command", "adams run"},
              {"target", t},
              {"N", N},
              {"differentials", R.log},
              {"pages", pages},
              {"einf", dims_json(R.einf.dims, "s", "stem")},
              {"checks",
               {{"well_defined", R.well_defined},
                {"d_squared", R.d_squared_ok},
                {"leibniz", R.leibniz_ok},
                {"nontorsion_odd", R.nontorsion_odd},
                {"free_towers", R.free_towers},
                {"matches_closed_form", R.matches_closed_form}}},
              {"table", tab}});
    }
    else if (c.format == "csv") {
        std::cout << "degree,label,torsion\n";
        for (auto& [d, es] : table)
            for (auto& e : es) std::cout << d << "," << e.label << "," << (e.torsion < 0 ? std::string("free") : std::to_string(e.torsion)) << "\n";
    }
    else if (c.format == "svg")
        std::cout << chart_svg(R);
    else {
        std::cout << t << " through stem " << N << "\n";
        for (auto& l : R.log) std::cout << "  " << l << "\n";
        for (auto& [d, es] : table) {
            std::cout << d << ":";
            for (auto& e : es) std::cout << "  " << e.label << " [" << (e.torsion < 0 ? std::string("free") : "v1^" + std::to_string(e.torsion)) << "]";
            std::cout << "\n";
        }
        std::cout << "E_infinity\n" << chart_text(R.einf.dims, N);
        std::cout << "closed form " << (R.matches_closed_form ? "matches" : "DIFFERS") << "\n";
    }
    return R.matches_closed_form && R.d_squared_ok && R.leibniz_ok && R.well_defined ? kOk : kFail;
}

/* ---- verify ---- */

int cmd_verify(const Common& c, const std::string& only, const std::string& fixtures)
{
    need_format(c, {"table", "json", "csv"});
    AcceptanceOptions o;
    o.N = c.maxdeg_or(60);
    o.jobs = std::max(1, c.jobs);
    o.cache = c.cache;
    if (o.N < kMinAcceptanceN) {
        std::cerr << "thhforge: verify needs --maxdeg >= " << kMinAcceptanceN << ", got " << o.N << "\n";
        return kRangeTooSmall;
    }
    std::vector<int> ids;
    for (auto& s : split(only, ',')) {
        try {
            ids.push_back(std::stoi(s));
            criterion_title(ids.back());
        }
        catch (...) {
            throw BadArgs("unknown criterion " + s);
        }
    }
    auto rs = run_acceptance(o, ids);
    auto fx = check_fixtures(fixtures.empty() ? default_fixture_dir() : fixtures);
    bool ok = fx.pass;
    for (auto& r : rs) ok = ok && r.pass;
    auto status = [](bool b) { return b ? "PASS" : "FAIL"; };
    if (c.format == "json") {
        ojson arr = ojson::array();
        for (auto& r : rs)
            arr.push_back({{"id", r.id}, {"title", r.title}, {"status", status(r.pass)}, {"checks", r.checks},
                           {"detail", r.detail}, {"elapsed", r.elapsed}});
        emit({{"command", "verify"},
              {"N", o.N},
              {"jobs", o.jobs},
              {"criteria", arr},
              {"fixtures", {{"status", status(fx.pass)}, {"checks", fx.checks}, {"detail", fx.detail}, {"elapsed", fx.elapsed}}},
              {"passed", ok}});
    }
    else if (c.format == "csv") {
        std::cout << "id,status,elapsed\n";
        for (auto& r : rs) std::cout << r.id << "," << status(r.pass) << "," << r.elapsed << "\n";
        std::cout << "fixtures," << status(fx.pass) << "," << fx.elapsed << "\n";
    }
    else {
        for (auto& r : rs) std::printf("%s %2d %s (%s, %.2fs)\n", status(r.pass), r.id, r.title.c_str(), r.detail.c_str(), r.elapsed);
        std::printf("%s fixtures (%s)\n", status(fx.pass), fx.detail.c_str());
    }
    return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"thhforge: Steenrod, Hochschild, Bokstedt and Adams computations over F_p"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    Common c;
    app.add_option("--p", c.p, "prime")->check(CLI::Range(2, 97));
    app.add_option("--maxdeg,-N", c.maxdeg, "degree bound")->check(CLI::Range(0, kMaxDeg));
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json", "csv", "svg"}));
    app.add_option("--cache", c.cache, "Steenrod basis cache directory")->envname("THHFORGE_CACHE");
    app.add_option("--jobs,-j", c.jobs, "parallel criteria for verify")->check(CLI::Range(1, 256));

    auto* st = app.add_subcommand("steenrod", "mod 2 Steenrod algebra");
    st->require_subcommand(1);
    SteenrodArgs sa;
    auto* st_basis = st->add_subcommand("basis", "basis of a subalgebra in one degree");
    st_basis->add_option("--subalgebra", sa.sub, "A, A<n>, E(Q0,...)");
    st_basis->add_option("--degree", sa.degree)->required()->check(CLI::Range(0, kMaxDeg));
    auto* st_rank = st->add_subcommand("rank", "total rank, or the dimension in one degree");
    st_rank->add_option("--subalgebra", sa.sub);
    st_rank->add_option("--degree", sa.degree)->check(CLI::Range(0, kMaxDeg));
    auto* st_quot = st->add_subcommand("quotient", "cyclic module B / B{ideal}");
    st_quot->add_option("--subalgebra", sa.sub)->required();
    st_quot->add_option("--ideal", sa.ideal, "comma separated generators")->required();
    st_quot->add_flag("--total-rank", sa.total);
    auto* st_ker = st->add_subcommand("kernel", "kernel of right multiplication between cyclic modules");
    st_ker->add_option("--subalgebra", sa.sub);
    st_ker->add_option("--map", sa.map);
    st_ker->add_option("--source-ideal", sa.source_ideal);
    st_ker->add_option("--target-ideal", sa.target_ideal);
    st_ker->add_option("--shift", sa.shift);
    auto* st_pair = st->add_subcommand("pair", "<a, x> for a in A and x in A_*");
    st_pair->add_option("--element", sa.element)->required();
    st_pair->add_option("--dual", sa.dual, "monomial such as xi1^2 or xib2")->required();

    auto* hh = app.add_subcommand("hh", "Hochschild homology");
    hh->require_subcommand(1);
    HHArgs ha;
    auto* hh_c = hh->add_subcommand("compute", "HH of a presented algebra");
    hh_c->add_option("--preset", ha.preset)->check(CLI::IsMember({"idempotent", "poly", "ext"}));
    hh_c->add_option("--generators", ha.generators, "name:degree:kind,... with kind poly, ext or dp");
    hh_c->add_option("--presentation", ha.presentation, "JSON file {p, generators:[{name, degree, kind, height}]}");
    hh_c->add_option("--degree", ha.degree, "generator degree for the poly and ext presets");
    hh_c->add_option("--qmax", ha.qmax)->check(CLI::Range(0, kMaxDeg));

    auto* bk = app.add_subcommand("bokstedt", "Bokstedt spectral sequence");
    bk->require_subcommand(1);
    std::string spectrum;
    auto* bk_run = bk->add_subcommand("run", "THH of a catalog spectrum");
    bk_run->add_option("--spectrum", spectrum)->required();

    auto* ad = app.add_subcommand("adams", "Adams spectral sequences for THH(ku)^M and THH(ko)^Y");
    ad->require_subcommand(1);
    std::string target, chart;
    auto* ad_run = ad->add_subcommand("run", "pages, E_infinity and the homotopy table");
    ad_run->add_option("--target", target)->required();
    ad_run->add_option("--chart", chart, "write an SVG chart here");

    auto* vf = app.add_subcommand("verify", "run the acceptance suite");
    std::string only, fixtures;
    vf->add_option("--only", only, "comma separated criterion ids");
    vf->add_option("--fixtures", fixtures, "golden directory");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (st->parsed()) {
            if (st_basis->parsed()) return cmd_basis(c, sa);
            if (st_rank->parsed()) return cmd_rank(c, sa);
            if (st_quot->parsed()) return cmd_quotient(c, sa);
            if (st_ker->parsed()) return cmd_kernel(c, sa);
            return cmd_pair(c, sa);
        }
        if (hh->parsed()) return cmd_hh(c, ha);
        if (bk->parsed()) return cmd_bokstedt(c, spectrum);
        if (ad->parsed()) return cmd_adams(c, target, chart);
        return cmd_verify(c, only, fixtures);
    }
    catch (const BadArgs& e) {
        std::cerr << "thhforge: " << e.what() << "\n";
        return kBadArgs;
    }
    catch (const std::exception& e) {
        std::cerr << "thhforge: " << e.what() << "\n";
        return kFail;
    }
}
