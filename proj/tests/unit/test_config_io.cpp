#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wavelab/config.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/io.hpp"
#include "wavelab/sweep.hpp"

using namespace wavelab;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({"schema": "wave-lab/1",
                          "chart": {"u_minus": {"v": 1, "u": 1}, "v_mid": 1.3, "v_plus": 1.35}})");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config defaults and validation") {
    const RunConfig c = parse_config(minimal());
    CHECK(c.cells == 4000);
    CHECK(c.t_end == 200.0);
    CHECK(c.gas.gamma == doctest::Approx(5.0 / 3.0));

    json bad = minimal();
    bad["grid"] = {{"cels", 10}};
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = minimal();
    bad["extra"] = 1;
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = minimal();
    bad.erase("schema");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = minimal();
    bad["chart"]["delta_r"] = 0.1;
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("config survives a round trip") {
    json doc = minimal();
    doc["sweep"] = {{"eps0", {0.01, 0.02}}};
    const RunConfig a = parse_config(doc);
    const RunConfig b = parse_config(json::parse(to_json(a).dump()));
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("chart resolution by strengths and domain length") {
    json doc = minimal();
    doc["chart"] = {{"u_minus", {{"v", 1}, {"u", 1}}}, {"delta_r", 0.1}, {"delta_s", 0.05}};
    const RunConfig c = parse_config(doc);
    const WaveChart w = resolve_chart(c);
    CHECK(w.delta_r == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(w.delta_s == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(w.beta == doctest::Approx(100.0 / w.delta_s));
    const double L = resolve_length(c, w);
    CHECK(std::fmod(L, 50.0) == 0.0);
    CHECK(L - (w.sigma - w.sigma_minus) * c.t_end - w.beta >= 30.0 / w.delta_s);
}

TEST_CASE("csv formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const auto path = std::filesystem::temp_directory_path() / "wavelab_unit_io.csv";
    {
        CsvWriter w(path, {"a", "b"});
        w.row(std::vector<double>{1.0, 2.5});
        CHECK_THROWS(w.row(std::vector<double>{1.0}));
    }
    CHECK(slurp(path) == "a,b\r\n1,2.5\r\n");
    std::filesystem::remove(path);
}

TEST_CASE("line and envelope fits recover known parameters") {
    const std::vector<double> x = {0, 1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 - 0.5 * v);
    const LineFit l = fit_line(x, y);
    CHECK(l.slope == doctest::Approx(-0.5));
    CHECK(l.intercept == doctest::Approx(2.0));
    CHECK(l.r2 == doctest::Approx(1.0));

    std::vector<double> t, z;
    for (int k = 0; k <= 20; ++k) {
        t.push_back(k);
        z.push_back(3.0 * std::exp(-0.3 * k));
    }
    const EnvelopeFit e = fit_envelope(t, z, [](double c, double s) { return std::exp(-c * s); }, -2.0, 5.0);
    CHECK(e.c == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(e.amplitude == doctest::Approx(3.0).epsilon(1e-6));
    CHECK_FALSE(e.at_bound);
}

TEST_CASE("sweep grid expansion and point application") {
    SweepAxes axes;
    CHECK(expand_sweep(axes).size() == 1);
    axes.eps0 = {0.005, 0.01, 0.02};
    axes.delta_s = {0.025, 0.05};
    const auto pts = expand_sweep(axes);
    REQUIRE(pts.size() == 6);
    CHECK(*pts[1].delta_s == 0.05);
    CHECK(*pts[5].eps0 == 0.02);

    const RunConfig base = parse_config(minimal());
    const RunConfig c = apply_point(base, pts[0]);
    CHECK(c.perturbation.eps0 == 0.005);
    const double dx0 = resolve_length(base, resolve_chart(base)) / base.cells;
    const double dx1 = resolve_length(c, resolve_chart(c)) / c.cells;
    CHECK(dx1 == doctest::Approx(dx0).epsilon(1e-3));
    CHECK(SweepRow::column_names().size() == SweepRow{}.fields().size());
}
