// adelion: exact harmonic analysis on p-adic fields and the adele ring.
//
// Subcommands generate wavelet bases, audit orthonormality, apply Fourier
// multiplier operators, verify eigenvalues, test Lizorkin membership, and
// decompose test functions.  JSON in, JSON out; CSV for matrices.  All
// randomness is seeded, outputs are byte-identical for identical inputs.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "adelion/io.hpp"

using namespace adelion;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--in", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
}

json report_shell(const std::string& command, const std::string& input_digest) {
    json r;
    r["command"] = command;
    r["input_digest"] = input_digest;
    r["tolerance"] = config::amplitude_tolerance();
    return r;
}

std::pair<long, long> parse_range(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        long v = std::stol(spec);
        return {v, v};
    }
    return {std::stol(spec.substr(0, colon)), std::stol(spec.substr(colon + 1))};
}

std::vector<Prime> parse_places(const std::string& spec) {
    std::vector<Prime> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

std::string format_complex(const Complex& c) {
    std::ostringstream ss;
    ss.precision(17);
    ss << c.real();
    if (c.imag() != 0) ss << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    return ss.str();
}

// ---- basis ----------------------------------------------------------------

int cmd_basis(const std::string& family, Prime p, long s, const std::string& jbox, long jmax,
              long depth, const std::string& places_spec, unsigned seed,
              const std::string& out_path) {
    Timer timer;
    json fns = json::array();

    if (family == "kozyrev") {
        auto [jlo, jhi] = parse_range(jbox);
        for (long k = 1; k < p; ++k)
            for (long j = jlo; j <= jhi; ++j)
                for (const Rat& a : enumerate_shifts(p, depth))
                    fns.push_back(tagged(kozyrev(p, k, j, a)));
    } else if (family == "haar") {
        std::mt19937 rng(seed);
        HaarFamilyParams params;
        params.p = p;
        params.s = s;
        params.unitary = random_unitary(static_cast<size_t>(p - 1), rng);
        size_t ps = 1;
        for (long i = 0; i < s; ++i) ps *= static_cast<size_t>(p);
        params.sigma = random_unimodular(static_cast<size_t>(p - 1), ps, rng);
        for (long mu = 1; mu < p; ++mu) fns.push_back(tagged(family_wavelet(params, mu)));
    } else if (family == "haar2") {
        std::mt19937 rng(seed);
        size_t ps = 1;
        for (long i = 0; i < s; ++i) ps *= 2;
        Matrix gamma = random_unimodular(1, ps, rng);
        fns.push_back(tagged(dyadic_family_wavelet(s, gamma[0])));
    } else if (family == "modified") {
        for (const auto& f : modified_basis(p, jmax, depth)) fns.push_back(tagged(f));
    } else if (family == "adelic") {
        auto places = parse_places(places_spec);
        auto [jlo, jhi] = parse_range(jbox);
        // tensor-basis box: real Haar wavelets x modified factors per place
        std::vector<AdelicIndex> idxs{AdelicIndex{}};
        for (Prime q : places) {
            std::vector<AdelicIndex> next;
            for (const auto& base : idxs) {
                for (const Rat& a : enumerate_shifts(q, depth)) {
                    AdelicIndex with = base;
                    if (a != 0) with.places[q] = PlaceIndex::scaling_shift(a);
                    next.push_back(with);
                    for (long k = 1; k < q; ++k)
                        for (long j = 0; j <= jmax; ++j) {
                            AdelicIndex w = base;
                            w.places[q] = PlaceIndex::wavelet(k, j, a);
                            next.push_back(w);
                        }
                }
            }
            idxs = std::move(next);
        }
        for (const auto& base : idxs)
            for (long j = jlo; j <= jhi; ++j)
                for (long long n = -depth; n <= depth; ++n) {
                    AdelicIndex idx = base;
                    idx.real = RealIndex{false, j, n};
                    fns.push_back(tagged(AdelicFunction(adelic_wavelet(idx, false))));
                }
    } else if (family == "mra") {
        auto places = parse_places(places_spec);
        Prime m = places.empty() ? 2 : places.back();
        std::vector<AdelicShift> shifts;
        {
            std::vector<AdelicShift> acc{AdelicShift{}};
            for (Prime q : places) {
                std::vector<AdelicShift> next;
                for (const auto& base : acc)
                    for (const Rat& a : enumerate_shifts(q, depth)) {
                        AdelicShift sh = base;
                        sh.finite[q] = a;
                        next.push_back(sh);
                    }
                acc = std::move(next);
            }
            for (const auto& base : acc)
                for (long long n = -depth; n <= depth; ++n) {
                    AdelicShift sh = base;
                    sh.real = n;
                    shifts.push_back(sh);
                }
        }
        for (const auto& sh : shifts) fns.push_back(tagged(AdelicFunction(mra_scaling(sh))));
        long npat = 1 << (places.size() + 1);
        for (long bits = 1; bits < npat; ++bits) {
            MraPattern pat;
            pat.m = m;
            pat.real_wavelet = (bits & 1) != 0;
            for (size_t i = 0; i < places.size(); ++i)
                pat.wavelet_at[places[i]] = ((bits >> (i + 1)) & 1) != 0;
            std::vector<std::map<Prime, long>> khats{{}};
            for (Prime q : places) {
                if (!pat.wavelet_at[q]) continue;
                std::vector<std::map<Prime, long>> next;
                for (const auto& base : khats)
                    for (long k = 1; k < q; ++k) {
                        auto kh = base;
                        kh[q] = k;
                        next.push_back(kh);
                    }
                khats = std::move(next);
            }
            for (const auto& kh : khats)
                for (long j = 0; j <= jmax; ++j)
                    for (const auto& sh : shifts)
                        fns.push_back(tagged(AdelicFunction(mra_wavelet(pat, kh, j, sh))));
        }
    } else {
        throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    }

    json report = report_shell("basis", "");
    report["family"] = family;
    report["count"] = fns.size();
    report["functions"] = std::move(fns);
    emit(report, out_path);
    std::cerr << "basis: " << report["count"] << " functions in " << timer.ms() << " ms\n";
    return 0;
}

// ---- gram ------------------------------------------------------------------

int cmd_gram(const std::string& in_path, double tol, const std::string& out_path,
             const std::string& csv_path) {
    Timer timer;
    std::string text = read_file(in_path);
    json doc = json::parse(text);
    const json& fns = doc.contains("functions") ? doc.at("functions") : doc;
    if (!fns.is_array() || fns.empty()) {
        json report = report_shell("gram", std::to_string(fnv1a(text)));
        report["size"] = 0;
        report["max_deviation"] = 0.0;
        report["identity"] = true;
        emit(report, out_path);
        return 0;
    }

    std::string kind = fns.at(0).value("type", "local");
    Matrix g;
    if (kind == "local") {
        std::vector<LocalFunction> v;
        for (const auto& fj : fns) {
            if (fj.value("type", "local") != "local")
                throw CLI::ValidationError("--in", "mixed function kinds");
            v.push_back(local_from_json(fj));
        }
        g = gram_matrix(v);
    } else if (kind == "adelic") {
        std::vector<AdelicFunction> v;
        for (const auto& fj : fns) v.push_back(adelic_from_json(fj));
        g = gram_matrix(v, [](const AdelicFunction& a, const AdelicFunction& b) {
            return inner_product(a, b);
        });
    } else if (kind == "real") {
        std::vector<DyadicStep> v;
        for (const auto& fj : fns) v.push_back(dyadic_from_json(fj));
        g = gram_matrix(v, [](const DyadicStep& a, const DyadicStep& b) {
            return inner_product(a, b);
        });
    } else {
        throw CLI::ValidationError("--in", "unknown function kind '" + kind + "'");
    }

    double dev = max_identity_deviation(g);
    size_t worst_i = 0, worst_j = 0;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) {
            Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(g[i][j] - want) == dev) {
                worst_i = i;
                worst_j = j;
            }
        }

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        for (const auto& row : g) {
            for (size_t j = 0; j < row.size(); ++j)
                csv << (j ? "," : "") << format_complex(row[j]);
            csv << "\n";
        }
    }

    json report = report_shell("gram", std::to_string(fnv1a(text)));
    report["size"] = g.size();
    report["max_deviation"] = dev;
    report["worst_pair"] = json::array({worst_i, worst_j});
    report["identity"] = dev <= tol;
    emit(report, out_path);
    std::cerr << "gram: " << g.size() << "x" << g.size() << ", deviation " << dev << " in "
              << timer.ms() << " ms\n";
    return dev <= tol ? 0 : 1;
}

// ---- apply / eigencheck / decompose / lizorkin ------------------------------

int cmd_apply(const std::string& symbol_path, const std::string& in_path,
              const std::string& out_path) {
    Timer timer;
    std::string text = read_file(in_path);
    Symbol symbol = symbol_from_json(json::parse(read_file(symbol_path)));
    AdelicFunction f = adelic_from_json(json::parse(text));
    json report = report_shell("apply", std::to_string(fnv1a(text)));
    try {
        AdelicFunction g = apply_symbol(f, symbol);
        report["result"] = tagged(g);
    } catch (const NotLizorkinError& e) {
        report["error"] = e.what();
        report["place"] = e.place();
        emit(report, out_path);
        return 1;
    } catch (const SymbolDomainError& e) {
        report["error"] = e.what();
        report["place"] = e.place();
        emit(report, out_path);
        return 1;
    }
    emit(report, out_path);
    std::cerr << "apply: " << timer.ms() << " ms\n";
    return 0;
}

int cmd_eigencheck(const std::string& symbol_path, const std::string& index_path,
                   const std::string& out_path) {
    Timer timer;
    std::string text = read_file(index_path);
    Symbol symbol = symbol_from_json(json::parse(read_file(symbol_path)));
    AdelicIndex idx = index_from_json(json::parse(text));
    EigenResult res = eigen_check(symbol, idx);
    double residual = verify_eigenrelation(symbol, idx);
    json report = report_shell("eigencheck", std::to_string(fnv1a(text)));
    report["is_eigen"] = res.is_eigen;
    report["lambda"] = to_json(res.lambda);
    report["residual"] = residual;
    emit(report, out_path);
    std::cerr << "eigencheck: lambda = " << format_complex(res.lambda) << ", residual = "
              << residual << " in " << timer.ms() << " ms\n";
    return res.is_eigen ? 0 : 1;
}

int cmd_decompose(const std::string& in_path, long widen, const std::string& out_path) {
    Timer timer;
    std::string text = read_file(in_path);
    AdelicFunction f = adelic_from_json(json::parse(text));
    json report = report_shell("decompose", std::to_string(fnv1a(text)));
    try {
        Decomposition d = decompose(f, widen);
        json coeffs = json::array();
        for (const auto& [idx, c] : d.coefficients)
            coeffs.push_back(json{{"index", to_json(idx)}, {"coefficient", to_json(c)}});
        report["coefficients"] = std::move(coeffs);
        report["residual"] = d.residual;
        emit(report, out_path);
        std::cerr << "decompose: " << d.coefficients.size() << " coefficients, residual "
                  << d.residual << " in " << timer.ms() << " ms\n";
        return d.residual <= config::amplitude_tolerance() * 100 ? 0 : 1;
    } catch (const NotLizorkinError& e) {
        report["error"] = e.what();
        report["place"] = e.place();
        emit(report, out_path);
        return 1;
    }
}

int cmd_lizorkin(const std::string& in_path, long moments, const std::string& out_path) {
    Timer timer;
    std::string text = read_file(in_path);
    AdelicFunction f = adelic_from_json(json::parse(text));
    LizorkinReport rep = lizorkin_check(f, moments);
    json report = report_shell("lizorkin", std::to_string(fnv1a(text)));
    report["pass"] = rep.pass;
    json places = json::object();
    for (const auto& [q, ok] : rep.finite_ok) {
        json pj{{"pass", ok}};
        if (rep.finite_integral.count(q)) pj["integral"] = to_json(rep.finite_integral.at(q));
        places[std::to_string(q)] = pj;
    }
    report["places"] = places;
    if (f.has_real()) {
        report["real"] = json{{"pass", rep.real_ok}};
        if (!rep.real_ok) report["real"]["first_failing_moment"] = rep.first_failing_moment;
    }
    emit(report, out_path);
    std::cerr << "lizorkin: " << (rep.pass ? "pass" : "fail") << " in " << timer.ms() << " ms\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* tol = std::getenv("ADELION_TOL")) {
        try {
            config::set_amplitude_tolerance(std::stod(tol));
        } catch (...) {
            std::cerr << "ADELION_TOL ignored: not a number\n";
        }
    }

    CLI::App app{"exact wavelet and operator computations on p-adic fields and adeles"};
    app.require_subcommand(1);

    // basis
    auto* basis = app.add_subcommand("basis", "generate a wavelet family");
    std::string family, jbox = "0:0", places = "2", basis_out;
    Prime p = 2;
    long s = 0, jmax = 0, depth = 0;
    unsigned seed = 1;
    basis->add_option("--family", family, "kozyrev|haar|haar2|modified|adelic|mra")->required();
    basis->add_option("--p", p, "prime for one-place families");
    basis->add_option("--s", s, "support parameter");
    basis->add_option("--jbox", jbox, "dilation range lo:hi");
    basis->add_option("--jmax", jmax, "max wavelet level (Z_+ families)");
    basis->add_option("--depth", depth, "shift denominator depth");
    basis->add_option("--places", places, "comma-separated primes (adelic families)");
    basis->add_option("--seed", seed, "seed for random parameters");
    basis->add_option("--out", basis_out, "output file (default stdout)");

    // gram
    auto* gram = app.add_subcommand("gram", "Gram matrix and identity audit");
    std::string gram_in, gram_out, gram_csv;
    double gram_tol = 1e-12;
    gram->add_option("--in", gram_in, "basis JSON")->required();
    gram->add_option("--tol", gram_tol, "identity tolerance");
    gram->add_option("--out", gram_out, "report file (default stdout)");
    gram->add_option("--csv", gram_csv, "write the matrix as CSV");

    // apply
    auto* apply = app.add_subcommand("apply", "apply a Fourier multiplier");
    std::string apply_symbol_path, apply_in, apply_out;
    apply->add_option("--symbol", apply_symbol_path, "symbol JSON")->required();
    apply->add_option("--in", apply_in, "function JSON")->required();
    apply->add_option("--out", apply_out, "output file (default stdout)");

    // eigencheck
    auto* eigen = app.add_subcommand("eigencheck", "eigenfunction criterion and eigenvalue");
    std::string eigen_symbol_path, eigen_index_path, eigen_out;
    eigen->add_option("--symbol", eigen_symbol_path, "symbol JSON")->required();
    eigen->add_option("--index", eigen_index_path, "wavelet index JSON")->required();
    eigen->add_option("--out", eigen_out, "report file (default stdout)");

    // decompose
    auto* dec = app.add_subcommand("decompose", "finite wavelet decomposition");
    std::string dec_in, dec_out;
    long dec_widen = 0;
    dec->add_option("--in", dec_in, "function JSON")->required();
    dec->add_option("--widen", dec_widen, "widen the search box (certification)");
    dec->add_option("--out", dec_out, "report file (default stdout)");

    // lizorkin
    auto* liz = app.add_subcommand("lizorkin", "Lizorkin membership report");
    std::string liz_in, liz_out;
    long liz_moments = 0;
    liz->add_option("--in", liz_in, "function JSON")->required();
    liz->add_option("--moments", liz_moments, "real-place moments to require");
    liz->add_option("--out", liz_out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints usage or message
        return 2;
    }

    try {
        if (basis->parsed())
            return cmd_basis(family, p, s, jbox, jmax, depth, places, seed, basis_out);
        if (gram->parsed()) return cmd_gram(gram_in, gram_tol, gram_out, gram_csv);
        if (apply->parsed()) return cmd_apply(apply_symbol_path, apply_in, apply_out);
        if (eigen->parsed()) return cmd_eigencheck(eigen_symbol_path, eigen_index_path, eigen_out);
        if (dec->parsed()) return cmd_decompose(dec_in, dec_widen, dec_out);
        if (liz->parsed()) return cmd_lizorkin(liz_in, liz_moments, liz_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
