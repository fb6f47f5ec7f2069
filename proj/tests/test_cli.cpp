#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_path = std::string(SESH_CLI_PATH) + ".out.tmp";
    std::string cmd = std::string(SESH_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::remove(out_path.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, buf.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::string strip_toolchain(std::string text) {
    std::stringstream in(text), out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"toolchain\"") == std::string::npos) out << line << "\n";
    return out.str();
}

const std::string kCert = "/tmp/sesh-test-cert.json";
const std::string kDocs = SESH_DOCS_DIR;

} // namespace

TEST_CASE("compute then verify round-trips with exit 0") {
    auto c = run("p2 compute --minpoly \"t^2-2\" --point \"th,1,0\" --gamma 3/5 -o " + kCert);
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("exact 1/2") != std::string::npos);
    auto v = run("verify " + kCert);
    CHECK(v.exit_code == 0);
}

TEST_CASE("tampered witness coefficient is detected with exit 4") {
    run("p2 compute --minpoly \"t^2-2\" --point \"th,1,0\" --gamma 3/5 -o " + kCert);
    std::string text = slurp(kCert);
    auto pos = text.find("\"witness\": \"x2\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"witness\": \"x2\"").size(), "\"witness\": \"x1\"");
    spit(kCert, text);
    auto v = run("verify " + kCert);
    CHECK(v.exit_code == 4);
    CHECK(v.out.find("verification failed") != std::string::npos);
}

TEST_CASE("truncated certificate file is malformed with exit 3") {
    run("p2 compute --point \"0,0,1\" --gamma 9/10 -o " + kCert);
    std::string text = slurp(kCert);
    spit(kCert, text.substr(0, text.size() / 2));
    auto v = run("verify " + kCert);
    CHECK(v.exit_code == 3);
    auto missing = run("verify /tmp/does-not-exist-cert.json");
    CHECK(missing.exit_code == 3);
}

TEST_CASE("input errors exit 2 and name the failure") {
    auto reducible = run("p2 compute --minpoly \"t^2-1\" --point \"th,1,0\" --gamma 1/2");
    CHECK(reducible.exit_code == 2);
    CHECK(reducible.out.find("reducible") != std::string::npos);

    auto gamma = run("p2 compute --minpoly \"t^2-2\" --point \"th,1,0\" --gamma 3/4");
    CHECK(gamma.exit_code == 2);

    auto zero = run("p2 compute --point \"0,0,0\" --gamma 1/2");
    CHECK(zero.exit_code == 2);

    auto syntax = run("p2 compute --point \"0,0\" --gamma 1/2");
    CHECK(syntax.exit_code == 2);
}

TEST_CASE("identical inputs give byte-identical certificates modulo the fingerprint") {
    std::string other = kCert + ".second";
    run("p2 compute --minpoly \"t^3-2\" --point \"th,1,0\" --gamma 2/5 -o " + kCert);
    run("p2 compute --minpoly \"t^3-2\" --point \"th,1,0\" --gamma 2/5 -o " + other);
    CHECK(strip_toolchain(slurp(kCert)) == strip_toolchain(slurp(other)));
    std::remove(other.c_str());
}

TEST_CASE("bounds") {
    auto b = run("bounds --alpha 3 --selfint 1");
    CHECK(b.exit_code == 0);
    CHECK(b.out.find("epsilon^2 <= 1/3") != std::string::npos);
    auto mp = run("bounds --top 8 --degs 2,2 --power 3");
    CHECK(mp.exit_code == 0);
    CHECK(mp.out.find("epsilon^3 <= 2") != std::string::npos);
}

TEST_CASE("lattice subcommands read the documented file format") {
    auto s = run("lattice --file " + kDocs + "/examples/p2.json seshadri --point 0 --L 3 --complete");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("value = 3 (exact)") != std::string::npos);

    auto a = run("lattice --file " + kDocs + "/examples/abelian.json seshadri --point 0 --L 1 --complete");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("value = 2") != std::string::npos);
    CHECK(a.out.find("eps^2 <= 2") != std::string::npos);

    auto chi = run("lattice --file " + kDocs + "/examples/p2.json chi --D 3");
    CHECK(chi.exit_code == 0);
    CHECK(chi.out.find("10") != std::string::npos);

    auto nef = run("lattice --file " + kDocs + "/examples/p2.json nef --class 1,-1");
    CHECK(nef.exit_code == 0);
    CHECK(nef.out.find("nef against") != std::string::npos);

    auto notnef = run("lattice --file " + kDocs + "/examples/p2.json nef --class 1,-2");
    CHECK(notnef.out.find("not nef") != std::string::npos);

    auto scale = run("lattice --file " + kDocs + "/examples/p2.json scaling --n 5 --point 0 --L 1 --complete");
    CHECK(scale.exit_code == 0);
    CHECK(scale.out.find("hold") != std::string::npos);

    auto cover = run("lattice cover --setup " + kDocs + "/examples/cover-quadric.json");
    CHECK(cover.exit_code == 0);
    CHECK(cover.out.find("[equality]") != std::string::npos);

    auto missing = run("lattice --file /tmp/missing-lattice.json seshadri --point 0 --L 1");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("base-change report") {
    auto r = run("base-change --minpoly \"t^2-2\" --point \"th,1,0\" --ext self --gamma 3/5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("eps_Q = 1/2") != std::string::npos);
    CHECK(r.out.find("[9/10, 1]") != std::string::npos);
    CHECK(r.out.find("holds (strict)") != std::string::npos);

    auto a = run("base-change --point \"0,0,1\" --ext \"t^2+1\" --gamma 9/10");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("matches") != std::string::npos);
}

TEST_CASE("trend") {
    auto t = run("trend --dmax 5");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("alpha = 5: witness ratio 1/5") != std::string::npos);
}

TEST_CASE("unknown flags are input errors") {
    auto r = run("p2 compute --nope 1");
    CHECK(r.exit_code == 2);
}
