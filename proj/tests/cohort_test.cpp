#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kerap/cohort/cohort.hpp"
#include "kerap/util/errors.hpp"
#include "test_support.hpp"

using namespace kerap;
using kerap::testing::TempDir;
using kerap::testing::write_file;

TEST_CASE("load_cohort computes prevalence and validates structure") {
    TempDir dir("cohort");
    write_file(dir.file("c.jsonl"),
               R"({"disease": "CKD"})"
               "\n"
               R"({"visit_id": "v1", "attributes": ["a", "b"], "label": true})"
               "\n"
               R"({"visit_id": "v2", "attributes": ["c"], "label": false})"
               "\n");
    const auto cohort = cohortio::load_cohort(dir.file("c.jsonl").string());
    CHECK(cohort.disease == "CKD");
    CHECK(cohort.visits.size() == 2);
    CHECK(cohort.prevalence() == 0.5);
    CHECK(cohort.labeled_count() == 2);
}

TEST_CASE("load_cohort rejects duplicates, empty attributes and bad lines") {
    TempDir dir("cohort_bad");

    write_file(dir.file("dup.jsonl"),
               R"({"disease": "d"})"
               "\n"
               R"({"visit_id": "v1", "attributes": ["a"], "label": null})"
               "\n"
               R"({"visit_id": "v1", "attributes": ["b"], "label": null})"
               "\n");
    try {
        cohortio::load_cohort(dir.file("dup.jsonl").string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("v1") != std::string::npos);
        CHECK(e.line() == 3);
    }

    write_file(dir.file("empty_attrs.jsonl"),
               R"({"disease": "d"})"
               "\n"
               R"({"visit_id": "v1", "attributes": [], "label": true})"
               "\n");
    CHECK_THROWS_AS(cohortio::load_cohort(dir.file("empty_attrs.jsonl").string()), ParseError);

    write_file(dir.file("garbled.jsonl"),
               R"({"disease": "d"})"
               "\nnot json at all\n");
    CHECK_THROWS_AS(cohortio::load_cohort(dir.file("garbled.jsonl").string()), ParseError);

    write_file(dir.file("headerless.jsonl"),
               R"({"visit_id": "v1", "attributes": ["a"], "label": true})"
               "\n");
    CHECK_THROWS_AS(cohortio::load_cohort(dir.file("headerless.jsonl").string()), ParseError);
}

TEST_CASE("cohort write-load round trip") {
    cohortio::Cohort cohort;
    cohort.disease = "Something";
    cohort.visits = {{"a", {"x", "y"}, true}, {"b", {"z"}, std::nullopt}, {"c", {"w"}, false}};

    TempDir dir("cohort_rt");
    cohortio::write_cohort(cohort, dir.file("c.jsonl").string());
    const auto reloaded = cohortio::load_cohort(dir.file("c.jsonl").string());
    REQUIRE(reloaded.visits.size() == cohort.visits.size());
    CHECK(reloaded.disease == cohort.disease);
    for (std::size_t i = 0; i < cohort.visits.size(); ++i) {
        CHECK(reloaded.visits[i].visit_id == cohort.visits[i].visit_id);
        CHECK(reloaded.visits[i].attributes == cohort.visits[i].attributes);
        CHECK(reloaded.visits[i].label == cohort.visits[i].label);
    }
}

TEST_CASE("synth_cohort boundaries and determinism") {
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};

    const auto none = cohortio::synth_cohort(1, 10, 0.0, vocab, "d");
    CHECK(none.positive_count() == 0);

    const auto all = cohortio::synth_cohort(1, 10, 1.0, vocab, "d");
    CHECK(all.positive_count() == 10);

    const auto first = cohortio::synth_cohort(42, 50, 0.3, vocab, "d");
    const auto second = cohortio::synth_cohort(42, 50, 0.3, vocab, "d");
    REQUIRE(first.visits.size() == second.visits.size());
    for (std::size_t i = 0; i < first.visits.size(); ++i) {
        CHECK(first.visits[i].visit_id == second.visits[i].visit_id);
        CHECK(first.visits[i].attributes == second.visits[i].attributes);
        CHECK(first.visits[i].label == second.visits[i].label);
    }

    CHECK_THROWS_AS(cohortio::synth_cohort(1, 5, 0.5, {}, "d"), InvalidInputError);
    CHECK_THROWS_AS(cohortio::synth_cohort(1, 5, 1.5, vocab, "d"), InvalidInputError);
}

TEST_CASE("synth_cohort hits round(n*prevalence) exactly") {
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 3000;
        const double prevalence = static_cast<double>(rng() % 10001) / 10000.0;
        const auto cohort = cohortio::synth_cohort(rng(), n, prevalence, vocab, "d");
        const auto expected = static_cast<std::size_t>(
            std::llround(prevalence * static_cast<double>(n)));
        CHECK(cohort.positive_count() == expected);
        CHECK(cohort.visits.size() == n);
    }
    // the large-n case from the harness's own scale
    const auto big = cohortio::synth_cohort(7, 100000, 0.223, vocab, "d");
    CHECK(big.positive_count() == 22300);
}

TEST_CASE("1000-visit synthetic cohort lands on the target prevalence") {
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
    TempDir dir("cohort_prev");
    const auto cohort = cohortio::synth_cohort(5, 1000, 0.2230, vocab, "PSCI");
    cohortio::write_cohort(cohort, dir.file("c.jsonl").string());
    const auto loaded = cohortio::load_cohort(dir.file("c.jsonl").string());
    REQUIRE(loaded.prevalence().has_value());
    CHECK(std::abs(*loaded.prevalence() - 0.2230) <= 1.0 / 1000.0);
}
