#include "specklab/errors.hpp"
#include "specklab/json_io.hpp"
#include "specklab/parallel.hpp"
#include "specklab/repro.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace specklab;
using io::Json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("specklab_test_" + name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_SUITE("json_io")
{
    TEST_CASE("scenario, model and functional round trips")
    {
        std::mt19937_64 rng(13);
        for (const auto& s : {make_n_specker(3), make_symmetric_scenario(3, 2, 3), MarginalScenario{3, 2, {{1, 2}, {2, 3}}}}) {
            CHECK(io::scenario_from_json(io::to_json(s)) == s);
            auto f = random_functional(s, rng);
            f.offset = Rational(-7, 3);
            f.bound = DeclaredBound{lp::Relation::less_equal, Rational(5, 2)};
            CHECK(io::functional_from_json(io::to_json(f)) == f);
            for (const auto& v : enumerate_deterministic_models(s))
                CHECK(io::model_from_json(io::to_json(v)) == v);
        }
    }

    TEST_CASE("dump is stable")
    {
        auto j = io::to_json(make_n_specker(3));
        CHECK(io::dump(j) == io::dump(Json::parse(io::dump(j))));
        CHECK(io::dump(j).back() == '\n');
    }

    TEST_CASE("correlator files match the built-in pentagonal functional")
    {
        auto f = io::functional_from_json(io::read_json_file(default_data_dir() / "pentagonal.json"));
        auto builtin = pentagonal_functional();
        CHECK(f.scenario == builtin.scenario);
        CHECK(f.coefficients == builtin.coefficients);
        CHECK(f.offset == builtin.offset);
        // Without a scenario the all-pairs binary scenario is assumed.
        auto j = io::to_json(pentagonal_expression());
        CHECK(io::functional_from_json(j).coefficients == builtin.coefficients);
    }

    TEST_CASE("rationals are read from strings and integers only")
    {
        CHECK(io::rational_from_json(Json("3/4"), "x") == Rational(3, 4));
        CHECK(io::rational_from_json(Json(5), "x") == 5);
        CHECK_THROWS_AS(io::rational_from_json(Json(0.5), "x"), InputError);
        CHECK_THROWS_AS(io::rational_from_json(Json("1/0"), "x"), InputError);
    }

    TEST_CASE("malformed input raises InputError with context")
    {
        auto broken = temp_file("broken.json", "{\"measurements\": 3,\n \"outcomes\": }");
        CHECK_THROWS_AS(io::read_json_file(broken), InputError);
        CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), InputError);
        CHECK_THROWS_AS(io::scenario_from_json(Json::parse(R"({"measurements": 3, "outcomes": 2})")), InputError);
        CHECK_THROWS_AS(io::scenario_from_json(Json::parse(R"({"measurements": 3, "outcomes": 2, "contexts": [[1, 2]]})")),
                        InputError);
        auto duplicate = Json::parse(R"({"scenario": {"measurements": 1, "outcomes": 2, "contexts": [[1]]},
            "values": [{"event": {"context": [1], "outcomes": [0]}, "p": "1"},
                       {"event": {"context": [1], "outcomes": [0]}, "p": "0"}]})");
        CHECK_THROWS_AS(io::model_from_json(duplicate), InputError);
        std::filesystem::remove(broken);
    }

    TEST_CASE("Hermitian matrices accept real and complex entries")
    {
        auto y = io::herm_from_json(Json::parse(R"([[0, [0, -1]], [[0, 1], 0]])"), "y");
        CHECK(sdp::min_eigenvalue(y) == doctest::Approx(-1));
        CHECK_THROWS(io::herm_from_json(Json::parse(R"([[0, 1], [0, 0]])"), "bad"));
    }

    TEST_CASE("fixtures parse")
    {
        auto dir = default_data_dir();
        for (auto name : {"scenario_3_2.json", "scenario_4_2.json", "scenario_4_3.json"})
            CHECK_NOTHROW(io::scenario_from_json(io::read_json_file(dir / name)));
        auto p = io::model_from_json(io::read_json_file(dir / "triangle_anticorrelated.json"));
        CHECK(check_model(p).empty());
        CHECK(!classical_membership(p).member);
    }
}

TEST_SUITE("parallel")
{
    TEST_CASE("every index runs exactly once and results land in their slots")
    {
        for (std::size_t count : {0u, 1u, 7u, 1000u}) {
            std::vector<std::size_t> out(count, 0);
            std::atomic<std::size_t> calls{0};
            parallel_for(count, [&](std::size_t i) {
                out[i] = i * i;
                ++calls;
            });
            CHECK(calls == count);
            for (std::size_t i = 0; i < count; ++i)
                CHECK(out[i] == i * i);
        }
    }

    TEST_CASE("exceptions propagate")
    {
        CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                            if (i == 17)
                                throw std::runtime_error("boom");
                        }),
                        std::runtime_error);
    }

    TEST_CASE("thread count follows the environment")
    {
        setenv("SPECKLAB_THREADS", "3", 1);
        CHECK(worker_count() == 3);
        setenv("SPECKLAB_THREADS", "junk", 1);
        CHECK(worker_count() >= 1);
        unsetenv("SPECKLAB_THREADS");
    }
}

TEST_SUITE("repro")
{
    TEST_CASE("all headline numbers reproduce")
    {
        ReproOptions o;
        o.data_dir = default_data_dir();
        o.random_functionals = 10;
        auto r = reproduce_paper(o);
        CHECK(r.all_passed());
        CHECK(r.records.size() >= 13);
    }

    TEST_CASE("tampering with the pentagonal functional is detected")
    {
        ReproOptions o;
        o.data_dir = default_data_dir();
        o.random_functionals = 2;
        o.tamper_pentagonal = true;
        auto r = reproduce_paper(o);
        CHECK(!r.all_passed());
    }
}
