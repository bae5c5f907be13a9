#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "kerap/embed/hash_provider.hpp"
#include "kerap/embed/http_provider.hpp"
#include "kerap/embed/index.hpp"
#include "kerap/util/errors.hpp"
#include "test_support.hpp"

using namespace kerap;

TEST_CASE("hash provider is deterministic and text-sensitive") {
    embed::HashEmbeddingProvider provider(0, 768);
    const auto a1 = provider.embed_one("a");
    const auto a2 = provider.embed_one("a");
    const auto b = provider.embed_one("b");
    CHECK(a1 == a2);
    CHECK(a1 != b);
    CHECK(a1.size() == 768);
    for (float v : a1) {
        CHECK(std::isfinite(v));
        CHECK(v >= -1.0f);
        CHECK(v < 1.0f);
    }
    CHECK_THROWS_AS(provider.embed_one(""), InvalidInputError);

    embed::HashEmbeddingProvider other_seed(1, 768);
    CHECK(other_seed.embed_one("a") != a1);
}

TEST_CASE("cosine identities") {
    embed::EmbeddingVector v{1.0f, 2.0f, 2.0f};
    CHECK(embed::cosine(v, v) == doctest::Approx(1.0).epsilon(1e-9));

    embed::EmbeddingVector e1{1.0f, 0.0f};
    embed::EmbeddingVector e2{0.0f, 1.0f};
    CHECK(embed::cosine(e1, e2) == doctest::Approx(0.0).epsilon(1e-9));

    embed::EmbeddingVector a{1.0f, 2.0f, 2.0f};
    embed::EmbeddingVector b{2.0f, 1.0f, 2.0f};
    CHECK(embed::cosine(a, b) == doctest::Approx(8.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("cosine clamps negatives to zero and rejects bad input") {
    embed::EmbeddingVector a{1.0f, 0.0f};
    embed::EmbeddingVector neg{-1.0f, 0.0f};
    CHECK(embed::cosine(a, neg) == 0.0);

    embed::EmbeddingVector zero{0.0f, 0.0f};
    CHECK_THROWS_AS(embed::cosine(a, zero), InvalidInputError);
    embed::EmbeddingVector longer{1.0f, 0.0f, 0.0f};
    CHECK_THROWS_AS(embed::cosine(a, longer), InvalidInputError);
}

TEST_CASE("cosine is scale invariant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    std::uniform_real_distribution<float> scale(0.01f, 50.0f);
    for (int trial = 0; trial < 50; ++trial) {
        embed::EmbeddingVector a(16);
        for (auto& x : a) x = dist(rng);
        const float c = scale(rng);
        embed::EmbeddingVector scaled(a);
        for (auto& x : scaled) x *= c;
        CHECK(embed::cosine(a, scaled) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

namespace {

std::vector<kg::Entity> numbered_entities(std::size_t n, std::uint64_t salt = 0) {
    std::vector<kg::Entity> entities;
    for (std::size_t i = 0; i < n; ++i) {
        entities.push_back({"id" + std::to_string(i),
                            "entity name " + std::to_string(salt) + "_" + std::to_string(i),
                            "thing"});
    }
    return entities;
}

// Brute-force oracle: full scan, long-double accumulation, stable full sort.
std::vector<embed::LinkCandidate> brute_force_top(const std::vector<kg::Entity>& entities,
                                                  embed::EmbeddingProvider& provider,
                                                  const std::string& mention, std::size_t k) {
    const auto query = provider.embed_one(mention);
    std::vector<embed::LinkCandidate> scored;
    for (const auto& entity : entities) {
        const auto vec = provider.embed_one(entity.name);
        long double dot = 0.0L;
        long double qq = 0.0L;
        long double vv = 0.0L;
        for (std::size_t i = 0; i < vec.size(); ++i) {
            dot += static_cast<long double>(query[i]) * vec[i];
            qq += static_cast<long double>(query[i]) * query[i];
            vv += static_cast<long double>(vec[i]) * vec[i];
        }
        double sim = static_cast<double>(dot / (std::sqrt(qq) * std::sqrt(vv)));
        sim = std::clamp(sim, 0.0, 1.0);
        scored.push_back({entity.id, sim});
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.entity < b.entity;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

}  // namespace

TEST_CASE("top_candidates basic contracts") {
    auto provider = std::make_shared<embed::HashEmbeddingProvider>(0, 64);

    embed::EmbeddingIndex single(numbered_entities(1), provider);
    const auto only = single.top_candidates("whatever", {10, "hash"});
    REQUIRE(only.size() == 1);
    CHECK(only[0].entity == "id0");

    embed::EmbeddingIndex five(numbered_entities(5), provider);
    CHECK(five.top_candidates("q", {10, "hash"}).size() == 5);

    embed::EmbeddingIndex empty({}, provider);
    CHECK_THROWS_AS(empty.top_candidates("q", {10, "hash"}), InvalidStateError);
}

TEST_CASE("top_candidates equals the brute-force ranking") {
    auto provider = std::make_shared<embed::HashEmbeddingProvider>(7, 768);
    auto entities = numbered_entities(50);
    embed::EmbeddingIndex index(entities, provider);

    const auto got = index.top_candidates("some disease mention", {10, "hash"});
    const auto expected = brute_force_top(entities, *provider, "some disease mention", 10);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].entity == expected[i].entity);
        CHECK(got[i].score == doctest::Approx(expected[i].score).epsilon(1e-12));
    }
}

TEST_CASE("top_candidates ranking property over random indices") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng() % 200;
        auto provider = std::make_shared<embed::HashEmbeddingProvider>(rng(), 32);
        auto entities = numbered_entities(n, rng() % 5);
        // Duplicate names force exact score ties; id breaks them.
        if (n > 3) {
            entities[1].name = entities[0].name;
            entities[2].name = entities[0].name;
        }
        embed::EmbeddingIndex index(entities, provider);
        const std::size_t lc = 1 + rng() % 12;
        const auto mention = "mention " + std::to_string(rng() % 1000);

        const auto got = index.top_candidates(mention, {lc, "hash"});
        const auto expected = brute_force_top(entities, *provider, mention, lc);
        REQUIRE(got.size() == expected.size());
        double previous = 1.0;
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].entity == expected[i].entity);
            CHECK(got[i].score >= 0.0);
            CHECK(got[i].score <= 1.0);
            CHECK(got[i].score <= previous + 1e-15);
            previous = got[i].score;
        }
    }
}

TEST_CASE("http embedding provider round trip against a local stub") {
    httplib::Server server;
    std::atomic<int> calls{0};
    server.Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
        ++calls;
        const auto body = nlohmann::json::parse(req.body);
        REQUIRE(body.at("model") == "embed-test");
        nlohmann::json data = nlohmann::json::array();
        for (std::size_t i = 0; i < body.at("input").size(); ++i) {
            data.push_back({{"embedding", std::vector<float>{1.0f, 0.5f, float(i)}}});
        }
        res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    embed::HttpEmbeddingProvider provider("http://127.0.0.1:" + std::to_string(port) + "/v1",
                                          "embed-test", "test-key", 3);
    std::vector<std::string> texts{"alpha", "beta"};
    const auto vectors = provider.embed(texts);
    REQUIRE(vectors.size() == 2);
    CHECK(vectors[0] == embed::EmbeddingVector{1.0f, 0.5f, 0.0f});
    CHECK(vectors[1] == embed::EmbeddingVector{1.0f, 0.5f, 1.0f});
    CHECK(calls == 1);

    server.stop();
    thread.join();
}

TEST_CASE("http embedding provider retries 5xx and fails fast on 4xx") {
    httplib::Server server;
    std::atomic<int> calls{0};
    server.Post("/v1/embeddings", [&](const httplib::Request&, httplib::Response& res) {
        const int call = ++calls;
        if (call == 1) {
            res.status = 503;
            return;
        }
        nlohmann::json data = nlohmann::json::array();
        data.push_back({{"embedding", std::vector<float>{1.0f, 2.0f}}});
        res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
    });
    server.Post("/bad/embeddings", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.status = 401;
        res.set_content("nope", "text/plain");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    const auto base = "http://127.0.0.1:" + std::to_string(port);

    util::RetryPolicy fast{2, 1, 2};
    embed::HttpEmbeddingProvider provider(base + "/v1", "embed-test", "", 2, fast);
    std::vector<std::string> texts{"x"};
    CHECK(provider.embed(texts).size() == 1);
    CHECK(calls == 2);  // one 503, one success

    embed::HttpEmbeddingProvider bad(base + "/bad", "embed-test", "", 2, fast);
    calls = 0;
    CHECK_THROWS_AS(bad.embed(texts), ApiError);
    CHECK(calls == 1);  // 401 is not retried

    server.stop();
    thread.join();
}
