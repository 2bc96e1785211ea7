#include <CLI11.hpp>

#include "ramsey/bitdelta.hpp"
#include "ramsey/checkmode.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/constructions.hpp"
#include "ramsey/embedding.hpp"
#include "ramsey/hypergraph.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace ramsey;
namespace fs = std::filesystem;

// exit codes: 0 pass/holds/certificate, 1 verified failure/counterexample,
//             2 inconclusive/budget, 3 usage/parse error
namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct Common {
    std::uint64_t seed = 0;
    std::string mode = "montecarlo";
    long samples = 1000;
    std::uint64_t budget = 0;
    int retries = 5;
    int threads = 1;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--mode", c.mode, "exhaustive or montecarlo")
        ->check(CLI::IsMember({"exhaustive", "montecarlo"}));
    cmd->add_option("--samples", c.samples, "Monte Carlo sample count");
    cmd->add_option("--budget", c.budget, "node/enumeration budget (0 = default)");
    cmd->add_option("--retries", c.retries, "sample-verify retry cap");
    cmd->add_option("--threads", c.threads, "internal parallelism cap");
    cmd->add_option("--out", c.out, "output directory");
}

fs::path out_dir(const Common& c) {
    std::string dir = c.out;
    if (dir.empty()) {
        const char* env = std::getenv("RAMSEY_OUT");
        dir = env ? env : ".";
    }
    fs::create_directories(dir);
    return dir;
}

CheckMode make_mode(const Common& c) {
    if (c.mode == "exhaustive") return CheckMode::Exhaustive();
    return CheckMode::MonteCarlo(c.samples, c.seed);
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// every run leaves its fully resolved configuration next to its outputs
void write_runconfig(const fs::path& dir, const std::string& command,
                     const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream out;
    out << "command " << command << "\n";
    for (const auto& [k, v] : kv) out << k << " " << v << "\n";
    write_file(dir / "runconfig.txt", out.str());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph2 load_graph2(const std::string& path) {
    KGraph g = parse_kgraph(read_file(path));
    if (g.k != 2) throw std::runtime_error(path + ": expected a 2-uniform graph");
    Graph2 f;
    f.n = g.n;
    f.vertices.resize(static_cast<std::size_t>(g.n));
    std::iota(f.vertices.begin(), f.vertices.end(), 1);
    for (const auto& e : g.edges) f.edges.push_back({e[0], e[1]});
    f.canonicalize();
    return f;
}

std::vector<Nat> parse_values(const std::string& csv) {
    std::vector<Nat> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(Nat(item));
    return out;
}

int status_exit(CheckStatus st) {
    switch (st) {
        case CheckStatus::pass: return kPass;
        case CheckStatus::fail: return kFail;
        default: return kInconclusive;
    }
}

std::string fmt(double d) {
    std::ostringstream out;
    out << std::setprecision(17) << d;
    return out.str();
}

int cmd_gen_base(const Common& c, long s, int k, long clique_bound,
                 double sub_density, long min_subset) {
    fs::path dir = out_dir(c);
    CheckMode mode = make_mode(c);
    write_runconfig(dir, "gen-base",
                    {{"s", std::to_string(s)},
                     {"k", std::to_string(k)},
                     {"seed", std::to_string(c.seed)},
                     {"retries", std::to_string(c.retries)},
                     {"cliqueBound", std::to_string(clique_bound)},
                     {"subDensity", fmt(sub_density)},
                     {"minSubsetSize", std::to_string(min_subset)},
                     {"mode", mode.describe()},
                     {"threads", std::to_string(c.threads)}});
    SampledBase sb = sample_verified_base(s, c.seed, clique_bound, sub_density,
                                          min_subset, mode, c.retries);
    std::ostringstream rec;
    rec << "s " << s << "\n"
        << "masterSeed " << c.seed << "\n"
        << "attempts " << sb.attempts << "\n"
        << "verified " << (sb.verified ? 1 : 0) << "\n"
        << "[record]\n"
        << sb.record << "[end]\n";
    if (sb.verified && s <= 64) rec << "[dump]\n" << sb.coloring.dump() << "[end]\n";
    write_file(dir / "base-coloring.txt", rec.str());
    if (!sb.verified) {
        std::cerr << "gen-base: verification failed after " << sb.attempts
                  << " attempts\n";
        return kFail;
    }
    // full coloring spec only when s is a power of two (s = M_3 = 2^e)
    long e = 0;
    while ((1L << e) < s) ++e;
    if ((1L << e) == s) {
        ColoringSpec spec;
        spec.k = k;
        spec.constants = ConstructionConstants::desk(k, e);
        spec.seed = c.seed;
        for (int j = 3; j <= k; ++j) {
            TowerSize ts = tower_size_from_exponent(j, e, spec.bit_budget);
            if (!ts.materializable) {
                std::cerr << "gen-base: " << ts.note << "\n";
                return kInconclusive;
            }
            spec.msizes.push_back(ts.value);
        }
        spec.base = sb.coloring;
        spec.save((dir / "coloring-spec.txt").string());
    }
    std::cout << "gen-base: verified in " << sb.attempts << " attempt(s)\n";
    return kPass;
}

int cmd_build_h(const Common& c, int k, int n, const BuildHParams& params,
                double goodness_C) {
    fs::path dir = out_dir(c);
    auto cc = ConstructionConstants::desk(k, params.m);
    cc.goodness_C = goodness_C;
    BuildHParams p = params;
    p.max_retries = c.retries;
    p.check_mode = make_mode(c);
    write_runconfig(dir, "build-h",
                    {{"k", std::to_string(k)},
                     {"n", std::to_string(n)},
                     {"m", std::to_string(p.m)},
                     {"alpha", fmt(p.alpha)},
                     {"sBlock", std::to_string(p.s_block)},
                     {"tEdges", std::to_string(p.t_edges)},
                     {"fDegree", std::to_string(p.f_degree)},
                     {"fKNeighbors", std::to_string(p.f_k_neighbors)},
                     {"eps", fmt(p.eps)},
                     {"tDegreeCap", std::to_string(p.t_degree_cap)},
                     {"gmS", std::to_string(p.gm_s)},
                     {"goodnessC", fmt(goodness_C)},
                     {"seed", std::to_string(c.seed)},
                     {"retries", std::to_string(c.retries)},
                     {"mode", p.check_mode.describe()},
                     {"threads", std::to_string(c.threads)}});
    BuildHResult r = build_H(k, n, cc, p, c.seed);
    write_file(dir / "build-record.txt", r.record);
    if (!r.ok) {
        std::cerr << "build-h: stage '" << r.failed_stage << "' failed\n";
        return kFail;
    }
    save_kgraph(r.H, (dir / "H.txt").string());
    save_kgraph(r.HR, (dir / "HR.txt").string());
    save_kgraph(r.HE, (dir / "HE.txt").string());
    save_kgraph(r.blocks, (dir / "blocks.txt").string());
    std::cout << "build-h: Delta(H)=" << r.H.max_degree() << "\n";
    return kPass;
}

int cmd_certify(const Common& c, const std::string& h_path,
                const std::string& spec_path, long b) {
    fs::path dir = out_dir(c);
    write_runconfig(dir, "certify",
                    {{"H", h_path},
                     {"spec", spec_path},
                     {"b", std::to_string(b)},
                     {"budget", std::to_string(c.budget)}});
    KGraph H = load_kgraph(h_path);
    ColoringSpec spec = ColoringSpec::load(spec_path);
    CertifyOutcome out = certify_lower_bound(H, spec, b, c.budget);
    if (out.inconclusive) {
        std::cerr << "certify: search budget exceeded, no certificate\n";
        return kInconclusive;
    }
    if (!out.certified) {
        std::ostringstream w;
        w << "monochromatic " << to_string(*out.found_color) << " embedding:";
        for (const auto& x : out.found->target) w << " " << x;
        w << "\n";
        write_file(dir / "embedding-found.txt", w.str());
        std::cout << "certify: " << w.str();
        return kFail;
    }
    out.certificate->save((dir / "certificate.txt").string());
    std::cout << "certify: r(H) > " << out.certificate->bound.str() << "\n";
    return kPass;
}

int cmd_verify_certificate(const Common& c, const std::string& cert_path) {
    Certificate cert = Certificate::load(cert_path);
    std::string err = verify_certificate(cert, c.budget);
    if (err.empty()) {
        std::cout << "verify-certificate: accepted (r(H) > " << cert.bound.str()
                  << ")\n";
        return kPass;
    }
    if (err.find("budget") != std::string::npos) {
        std::cerr << "verify-certificate: " << err << "\n";
        return kInconclusive;
    }
    std::cerr << "verify-certificate: rejected: " << err << "\n";
    return kFail;
}

int cmd_brute_ramsey(const Common& c, const std::string& h_path, int N) {
    fs::path dir = out_dir(c);
    write_runconfig(dir, "brute-ramsey",
                    {{"H", h_path},
                     {"N", std::to_string(N)},
                     {"budget", std::to_string(c.budget)}});
    KGraph H = load_kgraph(h_path);
    BruteOutcome out;
    try {
        out = c.budget ? brute_ramsey_check(H, N, c.budget)
                       : brute_ramsey_check(H, N);
    } catch (const std::runtime_error& e) {
        std::cerr << "brute-ramsey: " << e.what() << "\n";
        return kInconclusive;
    }
    if (out.holds) {
        std::cout << "brute-ramsey: holds, r(H) <= " << N << "\n";
        return kPass;
    }
    std::ostringstream w;
    w << "N=" << N << " k=" << H.k << "\n" << out.coloring_bits << "\n";
    write_file(dir / "counterexample.txt", w.str());
    std::cout << "brute-ramsey: counterexample found, r(H) > " << N << "\n";
    return kFail;
}

int cmd_descend(const std::string& csv, std::size_t pivot) {
    std::vector<Nat> xs = parse_values(csv);
    DescentStep step = descend_step(xs, pivot);
    for (std::size_t i = 0; i < step.delta_to_pivot.size(); ++i)
        std::cout << (i + 1) << " " << step.delta_to_pivot[i] << "\n";
    return kPass;
}

int cmd_color(const std::string& spec_path, const std::string& csv) {
    ColoringSpec spec = ColoringSpec::load(spec_path);
    std::vector<Nat> xs = parse_values(csv);
    std::cout << to_string(spec.phik(spec.k, xs)) << "\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramsey: bounded-degree hypergraph lower-bound toolkit"};
    app.require_subcommand(1);

    Common c;

    // gen-base
    long gb_s = 0;
    int gb_k = 3;
    long gb_clique = 8, gb_min_subset = 16;
    double gb_density = 0.51;
    auto* gen_base = app.add_subcommand("gen-base", "sample and verify a base coloring");
    gen_base->add_option("--s", gb_s, "vertex count of the base coloring")->required();
    gen_base->add_option("--k", gb_k, "uniformity of the emitted spec");
    gen_base->add_option("--clique-bound", gb_clique, "largest allowed clique");
    gen_base->add_option("--sub-density", gb_density, "subset density threshold");
    gen_base->add_option("--min-subset", gb_min_subset, "smallest checked subset");
    add_common(gen_base, c);

    // build-h
    int bh_k = 3, bh_n = 0;
    BuildHParams bh;
    double bh_C = 50.0;
    auto* build_h = app.add_subcommand("build-h", "assemble H = H_R union H_E");
    build_h->add_option("--k", bh_k, "uniformity")->required();
    build_h->add_option("--n", bh_n, "vertex count")->required();
    build_h->add_option("--m", bh.m, "density parameter m");
    build_h->add_option("--alpha", bh.alpha, "goodness parameter");
    build_h->add_option("--s-block", bh.s_block, "block size");
    build_h->add_option("--t-edges", bh.t_edges, "blocks to sample");
    build_h->add_option("--f-degree", bh.f_degree, "expander degree cap");
    build_h->add_option("--f-k-neighbors", bh.f_k_neighbors, "expansion neighbor count");
    build_h->add_option("--eps", bh.eps, "spread/expansion parameter");
    build_h->add_option("--t-degree-cap", bh.t_degree_cap, "block degree cap");
    build_h->add_option("--gm-s", bh.gm_s, "part-count cap for goodness");
    build_h->add_option("--goodness-C", bh_C, "goodness constant C");
    add_common(build_h, c);

    // certify
    std::string ce_h, ce_spec;
    long ce_b = 1;
    auto* certify = app.add_subcommand("certify", "search both colors, emit a certificate");
    certify->add_option("--H", ce_h, "hypergraph file")->required();
    certify->add_option("--spec", ce_spec, "coloring spec file")->required();
    certify->add_option("--b", ce_b, "multiplicity bound");
    add_common(certify, c);

    // verify-certificate
    std::string vc_cert;
    auto* verify = app.add_subcommand("verify-certificate", "re-check a certificate");
    verify->add_option("--cert", vc_cert, "certificate file")->required();
    add_common(verify, c);

    // check gm|good|expander|spread
    auto* check = app.add_subcommand("check", "run a property checker");
    check->require_subcommand(1);
    std::string ck_file;
    long ck_m = 4, ck_s = 16, ck_ccap = 4;
    double ck_theta = 0.55, ck_alpha = 0.5, ck_eps = 0.25;
    int ck_kn = 2;
    auto* gm = check->add_subcommand("gm", "partition-pseudorandomness membership");
    gm->add_option("--G", ck_file, "3-graph file")->required();
    gm->add_option("--m", ck_m);
    gm->add_option("--s", ck_s);
    gm->add_option("--theta", ck_theta);
    add_common(gm, c);
    auto* good = check->add_subcommand("good", "goodness of a k-graph");
    good->add_option("--H", ck_file, "k-graph file")->required();
    good->add_option("--alpha", ck_alpha);
    good->add_option("--m", ck_m);
    good->add_option("--s", ck_s);
    good->add_option("--theta", ck_theta);
    add_common(good, c);
    auto* expander = check->add_subcommand("expander", "neighborhood expansion of F");
    expander->add_option("--F", ck_file, "2-graph file")->required();
    expander->add_option("--k-neighbors", ck_kn);
    expander->add_option("--eps", ck_eps);
    add_common(expander, c);
    auto* spread = check->add_subcommand("spread", "spread conditions of T");
    spread->add_option("--T", ck_file, "block hypergraph file")->required();
    spread->add_option("--C-cap", ck_ccap);
    spread->add_option("--eps", ck_eps);
    add_common(spread, c);

    // brute-ramsey
    std::string br_h;
    int br_n = 0;
    auto* brute = app.add_subcommand("brute-ramsey", "tiny-scale Ramsey oracle");
    brute->add_option("--H", br_h, "hypergraph file")->required();
    brute->add_option("--N", br_n, "host clique size")->required();
    add_common(brute, c);

    // descend
    std::string de_vals;
    std::size_t de_pivot = 1;
    auto* descend = app.add_subcommand("descend", "level-down image of a sorted tuple");
    descend->add_option("--values", de_vals, "comma-separated sorted values")->required();
    descend->add_option("--pivot", de_pivot, "1-based pivot index")->required();

    // color
    std::string co_spec, co_vals;
    auto* color = app.add_subcommand("color", "evaluate the coloring on a multiset");
    color->add_option("--spec", co_spec, "coloring spec file")->required();
    color->add_option("--values", co_vals, "comma-separated multiset")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen_base)
            return cmd_gen_base(c, gb_s, gb_k, gb_clique, gb_density, gb_min_subset);
        if (*build_h) return cmd_build_h(c, bh_k, bh_n, bh, bh_C);
        if (*certify) return cmd_certify(c, ce_h, ce_spec, ce_b);
        if (*verify) return cmd_verify_certificate(c, vc_cert);
        if (*gm) {
            fs::path dir = out_dir(c);
            GmResult r = check_Gm(load_kgraph(ck_file), ck_m, ck_s, ck_theta, make_mode(c));
            write_runconfig(dir, "check-gm",
                            {{"G", ck_file},
                             {"m", std::to_string(ck_m)},
                             {"s", std::to_string(ck_s)},
                             {"theta", fmt(ck_theta)},
                             {"mode", make_mode(c).describe()}});
            write_file(dir / "check-report.txt", r.record);
            std::cout << r.record;
            return status_exit(r.status);
        }
        if (*good) {
            fs::path dir = out_dir(c);
            GoodResult r = check_good(load_kgraph(ck_file), ck_alpha, ck_m, ck_s, ck_theta,
                                      make_mode(c));
            write_runconfig(dir, "check-good",
                            {{"H", ck_file},
                             {"alpha", fmt(ck_alpha)},
                             {"m", std::to_string(ck_m)},
                             {"s", std::to_string(ck_s)},
                             {"theta", fmt(ck_theta)},
                             {"mode", make_mode(c).describe()}});
            write_file(dir / "check-report.txt", r.record);
            std::cout << r.record;
            return status_exit(r.status);
        }
        if (*expander) {
            fs::path dir = out_dir(c);
            ExpansionResult r =
                check_F_expansion(load_graph2(ck_file), ck_kn, ck_eps, make_mode(c));
            write_runconfig(dir, "check-expander",
                            {{"F", ck_file},
                             {"kNeighbors", std::to_string(ck_kn)},
                             {"eps", fmt(ck_eps)},
                             {"mode", make_mode(c).describe()}});
            write_file(dir / "check-report.txt", r.record);
            std::cout << r.record;
            return status_exit(r.status);
        }
        if (*spread) {
            fs::path dir = out_dir(c);
            SpreadResult r = check_T(load_kgraph(ck_file), ck_ccap, ck_eps, make_mode(c));
            write_runconfig(dir, "check-spread",
                            {{"T", ck_file},
                             {"CCap", std::to_string(ck_ccap)},
                             {"eps", fmt(ck_eps)},
                             {"mode", make_mode(c).describe()}});
            write_file(dir / "check-report.txt", r.record);
            std::cout << r.record;
            return status_exit(r.status);
        }
        if (*brute) return cmd_brute_ramsey(c, br_h, br_n);
        if (*descend) return cmd_descend(de_vals, de_pivot);
        if (*color) return cmd_color(co_spec, co_vals);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.rfind("budget", 0) == 0 ? kInconclusive : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
