#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adelion/io.hpp"

using namespace adelion;

namespace {

std::string cli() { return ADELION_CLI_PATH; }

int run(const std::string& args) {
    int status = std::system((cli() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/adelion_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("command line") {
    TEST_CASE("usage errors exit 2") {
        CHECK(run("basis") == 2);
        CHECK(run("") == 2);
        CHECK(run("basis --family nosuch --p 2") == 2);
        CHECK(run("gram --in /nonexistent.json") == 2);
    }

    TEST_CASE("kozyrev basis count and gram identity") {
        std::string basis = tmp_path("kozyrev.json");
        std::string gram = tmp_path("kozyrev_gram.json");
        REQUIRE(run("basis --family kozyrev --p 2 --jbox -2:2 --depth 2 --out " + basis) == 0);
        json doc = json::parse(slurp(basis));
        CHECK(doc.at("count") == 20);  // (p-1) * |jbox| * p^depth
        CHECK(run("gram --in " + basis + " --tol 1e-12 --out " + gram) == 0);
        json g = json::parse(slurp(gram));
        CHECK(g.at("identity") == true);
        CHECK(g.at("max_deviation").get<double>() < 1e-12);
    }

    TEST_CASE("corrupted basis fails the gram audit with exit 1") {
        std::string basis = tmp_path("bad.json");
        std::string report = tmp_path("bad_gram.json");
        REQUIRE(run("basis --family kozyrev --p 2 --jbox 0:1 --depth 1 --out " + basis) == 0);
        json doc = json::parse(slurp(basis));
        doc["functions"][0]["terms"][0]["amp"] = json::array({2.0, 0.0});
        write_file(basis, doc.dump());
        CHECK(run("gram --in " + basis + " --tol 1e-12 --out " + report) == 1);
        json g = json::parse(slurp(report));
        CHECK(g.at("identity") == false);
        CHECK(g.at("worst_pair").is_array());
    }

    TEST_CASE("empty basis passes trivially") {
        std::string basis = tmp_path("empty.json");
        write_file(basis, R"({"functions": []})");
        CHECK(run("gram --in " + basis) == 0);
    }

    TEST_CASE("eigencheck on a fractional symbol prints the product eigenvalue") {
        std::string sym = tmp_path("sym.json");
        std::string idx = tmp_path("idx.json");
        std::string rep = tmp_path("eig.json");
        write_file(sym, R"({"m": 3, "places": {
            "2": {"kind": "power", "gamma": [1.0, 0.0]},
            "3": {"kind": "power", "gamma": [2.0, 0.0]}}})");
        write_file(idx, R"({"real": null, "places": {
            "2": {"type": "wavelet", "k": 1, "j": 1, "a": {"num": "1", "den": "2"}},
            "3": {"type": "wavelet", "k": 2, "j": 0, "a": {"num": "0", "den": "1"}}}})");
        CHECK(run("eigencheck --symbol " + sym + " --index " + idx + " --out " + rep) == 0);
        json r = json::parse(slurp(rep));
        CHECK(r.at("is_eigen") == true);
        // lambda = 2^{1*(1+1)} * 3^{2*(0+1)} = 4 * 9 = 36
        CHECK(std::abs(r.at("lambda").at(0).get<double>() - 36.0) < 1e-10);
        CHECK(r.at("residual").get<double>() < 1e-12);
    }

    TEST_CASE("lizorkin on the scaling tensor reports the failure at 2") {
        std::string fn = tmp_path("phi.json");
        std::string rep = tmp_path("liz.json");
        write_file(fn, R"({"terms": [{"real": null, "locals": {}}]})");
        CHECK(run("lizorkin --in " + fn + " --moments 0 --out " + rep) == 1);
        json r = json::parse(slurp(rep));
        CHECK(r.at("pass") == false);
        CHECK(r.at("places").at("2").at("pass") == false);
        CHECK(r.at("places").at("2").at("integral").at(0).get<double>() == 1.0);
    }

    TEST_CASE("apply then decompose round trip through files") {
        std::string fn = tmp_path("wavelet.json");
        std::string sym = tmp_path("frac.json");
        std::string applied = tmp_path("applied.json");
        std::string dec = tmp_path("dec.json");

        AdelicIndex idx;
        idx.places[2] = PlaceIndex::wavelet(1, 1, make_rat(Int(1), Int(2)));
        write_file(fn, tagged(AdelicFunction(adelic_wavelet(idx, true))).dump());
        write_file(sym, R"({"m": 2, "places": {"2": {"kind": "power", "gamma": [1.0, 0.0]}}})");

        REQUIRE(run("apply --symbol " + sym + " --in " + fn + " --out " + applied) == 0);
        json a = json::parse(slurp(applied));
        // D^1 psi = 2^{j+1} psi = 4 psi: decompose the result
        write_file(applied, a.at("result").dump());
        REQUIRE(run("decompose --in " + applied + " --out " + dec) == 0);
        json d = json::parse(slurp(dec));
        REQUIRE(d.at("coefficients").size() == 1);
        CHECK(std::abs(d.at("coefficients").at(0).at("coefficient").at(0).get<double>() - 4.0) <
              1e-10);
        CHECK(d.at("residual").get<double>() < 1e-10);
    }

    TEST_CASE("adelic and MRA basis generation feed the gram audit") {
        std::string basis = tmp_path("adelic.json");
        REQUIRE(run("basis --family adelic --places 2 --jbox -1:0 --jmax 1 --depth 1 --out " +
                    basis) == 0);
        CHECK(run("gram --in " + basis + " --tol 1e-10") == 0);

        std::string mra = tmp_path("mra.json");
        REQUIRE(run("basis --family mra --places 2,3 --jmax 1 --depth 0 --out " + mra) == 0);
        CHECK(run("gram --in " + mra + " --tol 1e-10") == 0);
    }

    TEST_CASE("byte-identical reports for identical inputs and seed") {
        std::string a = tmp_path("det_a.json"), b = tmp_path("det_b.json");
        REQUIRE(run("basis --family haar --p 3 --s 1 --seed 9 --out " + a) == 0);
        REQUIRE(run("basis --family haar --p 3 --s 1 --seed 9 --out " + b) == 0);
        CHECK(slurp(a) == slurp(b));
        REQUIRE(run("basis --family haar --p 3 --s 1 --seed 10 --out " + b) == 0);
        CHECK(slurp(a) != slurp(b));
    }
}
