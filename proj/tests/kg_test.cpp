#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "kerap/kg/io.hpp"
#include "kerap/kg/lexicon.hpp"
#include "kerap/kg/store.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/strings.hpp"
#include "test_support.hpp"

using namespace kerap;
using kerap::testing::TempDir;
using kerap::testing::write_file;

TEST_CASE("classify_polarity reproduces the exhibited labels") {
    const auto lexicon = kg::PolarityLexicon::defaults();
    CHECK(kg::classify_polarity("Not treats", lexicon) == kg::Polarity::Negative);
    CHECK(kg::classify_polarity("Relates with", lexicon) == kg::Polarity::Positive);
}

TEST_CASE("classify_polarity marker and override rules") {
    const auto lexicon = kg::PolarityLexicon::defaults();
    CHECK(kg::classify_polarity("NOT_ASSOCIATES", lexicon) == kg::Polarity::Negative);
    CHECK(kg::classify_polarity("no_evidence", lexicon) == kg::Polarity::Negative);
    CHECK(kg::classify_polarity("Contraindicated with", lexicon) == kg::Polarity::Negative);
    CHECK(kg::classify_polarity("rules out diagnosis", lexicon) == kg::Polarity::Negative);
    CHECK(kg::classify_polarity("treats", lexicon) == kg::Polarity::Positive);

    // Overrides beat markers in both directions.
    kg::PolarityLexicon with_overrides({"not"}, {{"Noted in", kg::Polarity::Positive},
                                                 {"treats poorly", kg::Polarity::Negative}});
    CHECK(with_overrides.classify("noted in") == kg::Polarity::Positive);
    CHECK(with_overrides.classify("NOTED IN") == kg::Polarity::Positive);
    CHECK(with_overrides.classify("Treats Poorly") == kg::Polarity::Negative);
}

TEST_CASE("classify_polarity is total and case-stable") {
    const auto lexicon = kg::PolarityLexicon::defaults();
    std::mt19937_64 rng(11);
    const std::string alphabet = "abcdefgNOTRULES_ xyz";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < 500; ++i) {
        std::string predicate;
        const auto len = 1 + rng() % 18;
        for (std::size_t j = 0; j < len; ++j) predicate.push_back(alphabet[pick(rng)]);
        const auto direct = lexicon.classify(predicate);
        CHECK(direct == lexicon.classify(util::to_lower(predicate)));
    }
}

namespace {

const char* kEntityHeader = "id\tname\tcategory\n";
const char* kTripleHeader = "head\tpredicate\ttail\n";

kg::KgStore store_from(const std::string& entities, const std::string& triples) {
    TempDir dir("kg");
    write_file(dir.file("e.tsv"), entities);
    write_file(dir.file("t.tsv"), triples);
    return kg::KgStore::ingest(dir.file("e.tsv").string(), dir.file("t.tsv").string());
}

}  // namespace

TEST_CASE("ingest of empty files yields an empty store") {
    const auto store = store_from(kEntityHeader, kTripleHeader);
    CHECK(store.entity_count() == 0);
    CHECK(store.triple_count() == 0);
    CHECK(store.report().dangling_dropped == 0);
}

TEST_CASE("ingest drops dangling triples and reports counts") {
    const auto store = store_from(
        std::string(kEntityHeader) + "a\tAspirin\tdrug\nb\tHeadache\tsymptom\nc\tFever\tsymptom\n",
        std::string(kTripleHeader) + "a\tTreats\tb\na\tTreats\tc\na\tTreats\tmissing\n");
    CHECK(store.entity_count() == 3);
    CHECK(store.triple_count() == 2);
    CHECK(store.report().dangling_dropped == 1);
}

TEST_CASE("ingest reports malformed rows with line numbers and keeps going") {
    const auto store = store_from(
        std::string(kEntityHeader) + "a\tAspirin\tdrug\nonly-one-field\nb\tFever\tsymptom\n",
        std::string(kTripleHeader) + "a\tTreats\tb\nbad row without tabs\n");
    CHECK(store.entity_count() == 2);
    CHECK(store.triple_count() == 1);
    CHECK(store.report().malformed_rows == 2);
    REQUIRE(store.report().issues.size() == 2);
    CHECK(store.report().issues[0].line == 3);  // after header + first entity
    CHECK(store.report().issues[1].line == 3);
}

TEST_CASE("duplicate entity id is a hard error") {
    CHECK_THROWS_AS(store_from(std::string(kEntityHeader) + "a\tAspirin\tdrug\na\tOther\tdrug\n",
                               kTripleHeader),
                    ParseError);
}

TEST_CASE("comment lines and blank lines are skipped") {
    const auto store = store_from(
        std::string("# comment\n") + kEntityHeader + "\n# more\na\tAspirin\tdrug\n",
        std::string(kTripleHeader) + "# nothing\n");
    CHECK(store.entity_count() == 1);
}

TEST_CASE("neighborhood splits by polarity as in the worked example") {
    const auto store = store_from(
        std::string(kEntityHeader) + "cd\tCognitive dysfunction\tdisease\n" +
            "cu\tCurcumin\tdrug\npr\tPravastatin\tdrug\niso\tIsolated thing\tdrug\n",
        std::string(kTripleHeader) + "cu\tRelates with\tcd\npr\tNot treats\tcd\n");
    const auto lexicon = kg::PolarityLexicon::defaults();

    const auto hood = store.neighborhood("cd", lexicon);
    REQUIRE(hood.positive.size() == 1);
    REQUIRE(hood.negative.size() == 1);
    CHECK(hood.positive[0].head == "cu");
    CHECK(hood.negative[0].head == "pr");

    const auto empty = store.neighborhood("iso", lexicon);
    CHECK(empty.positive.empty());
    CHECK(empty.negative.empty());

    CHECK_THROWS_AS(store.neighborhood("unknown", lexicon), NotFoundError);
}

TEST_CASE("neighborhood cap truncates deterministically in sorted order") {
    std::string entities(kEntityHeader);
    std::string triples(kTripleHeader);
    entities += "x\tHub\tdisease\n";
    for (int i = 0; i < 20; ++i) {
        const auto id = "n" + std::to_string(i);
        entities += id + "\tNeighbor " + std::to_string(i) + "\tdrug\n";
        triples += id + "\tAssociated with\tx\n";
    }
    const auto store = store_from(entities, triples);
    const auto lexicon = kg::PolarityLexicon::defaults();

    const auto capped = store.neighborhood("x", lexicon, 10);
    REQUIRE(capped.positive.size() == 10);
    CHECK(capped.negative.empty());

    // Independent oracle: sort all incident triples by (predicate, tail, head)
    // and take the prefix.
    auto full = store.neighborhood("x", lexicon);
    std::vector<kg::RelationTriple> expected = full.positive;
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        return std::tie(a.predicate, a.tail, a.head) < std::tie(b.predicate, b.tail, b.head);
    });
    expected.resize(10);
    CHECK(capped.positive == expected);

    const auto again = store.neighborhood("x", lexicon, 10);
    CHECK(again.positive == capped.positive);
}

TEST_CASE("uncapped neighborhood covers exactly the incident triples") {
    std::mt19937_64 rng(13);
    std::string entities(kEntityHeader);
    std::string triples(kTripleHeader);
    const int n = 12;
    for (int i = 0; i < n; ++i) {
        entities += "e" + std::to_string(i) + "\tEntity " + std::to_string(i) + "\tany\n";
    }
    std::vector<kg::RelationTriple> all;
    const char* predicates[] = {"Treats", "Not treats", "Associated with", "No_link"};
    for (int i = 0; i < 60; ++i) {
        kg::RelationTriple t{"e" + std::to_string(rng() % n), predicates[rng() % 4],
                             "e" + std::to_string(rng() % n)};
        triples += t.head + "\t" + t.predicate + "\t" + t.tail + "\n";
        all.push_back(t);
    }
    const auto store = store_from(entities, triples);
    const auto lexicon = kg::PolarityLexicon::defaults();

    for (int i = 0; i < n; ++i) {
        const auto id = "e" + std::to_string(i);
        const auto hood = store.neighborhood(id, lexicon);

        auto key = [](const kg::RelationTriple& t) { return t.head + "|" + t.predicate + "|" + t.tail; };
        std::multiset<std::string> got;
        for (const auto& t : hood.positive) {
            CHECK(lexicon.classify(t.predicate) == kg::Polarity::Positive);
            got.insert(key(t));
        }
        for (const auto& t : hood.negative) {
            CHECK(lexicon.classify(t.predicate) == kg::Polarity::Negative);
            got.insert(key(t));
        }
        std::multiset<std::string> expected;
        for (const auto& t : all) {
            if (t.head == id || t.tail == id) expected.insert(key(t));
        }
        CHECK(got == expected);
    }
}

TEST_CASE("ingest-export round trip preserves the triple multiset") {
    const std::string entities = std::string(kEntityHeader) +
                                 "a\tAspirin\tdrug\nb\tFever\tsymptom\nc\tHeadache\tsymptom\n";
    const std::string triples = std::string(kTripleHeader) +
                                "a\tTreats\tb\na\tTreats\tb\nb\tAssociated with\tc\n";
    const auto store = store_from(entities, triples);

    TempDir dir("roundtrip");
    kg::write_entities(store.entities(), dir.file("e.tsv").string());
    kg::write_triples(store.all_triples(), dir.file("t.tsv").string());
    const auto reloaded =
        kg::KgStore::ingest(dir.file("e.tsv").string(), dir.file("t.tsv").string());

    auto as_multiset = [](const std::vector<kg::RelationTriple>& ts) {
        std::multiset<std::string> out;
        for (const auto& t : ts) out.insert(t.head + "|" + t.predicate + "|" + t.tail);
        return out;
    };
    CHECK(as_multiset(store.all_triples()) == as_multiset(reloaded.all_triples()));
    CHECK(reloaded.entity_count() == store.entity_count());
}
