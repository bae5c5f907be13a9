#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kerap/agents/prediction.hpp"
#include "kerap/agents/strategy.hpp"
#include "kerap/cohort/cohort.hpp"
#include "kerap/embed/hash_provider.hpp"
#include "kerap/embed/index.hpp"
#include "kerap/eval/harness.hpp"
#include "kerap/eval/metrics.hpp"
#include "kerap/eval/report.hpp"
#include "kerap/kg/lexicon.hpp"
#include "kerap/kg/store.hpp"
#include "kerap/llm/fingerprint.hpp"
#include "kerap/pipeline.hpp"
#include "kerap/prompts/templates.hpp"
#include "kerap/util/log.hpp"

namespace py = pybind11;
using namespace kerap;

namespace {

kg::PolarityLexicon lexicon_from(const std::optional<std::vector<std::string>>& markers,
                                 const std::map<std::string, std::string>& overrides) {
    std::map<std::string, kg::Polarity> typed;
    for (const auto& [predicate, label] : overrides) {
        typed.emplace(predicate, label == "negative" ? kg::Polarity::Negative
                                                     : kg::Polarity::Positive);
    }
    if (!markers) {
        auto base = kg::PolarityLexicon::defaults();
        return kg::PolarityLexicon(base.negative_markers(), typed);
    }
    return kg::PolarityLexicon(*markers, typed);
}

py::dict neighborhood_dict(const kg::PolarizedNeighborhood& hood) {
    auto triples = [](const std::vector<kg::RelationTriple>& ts) {
        py::list out;
        for (const auto& t : ts) out.append(py::make_tuple(t.head, t.predicate, t.tail));
        return out;
    };
    py::dict out;
    out["entity"] = hood.entity;
    out["positive"] = triples(hood.positive);
    out["negative"] = triples(hood.negative);
    return out;
}

}  // namespace

PYBIND11_MODULE(_kerap, m) {
    m.doc() = "Knowledge-graph-enhanced zero-shot diagnosis prediction pipeline";

    m.def(
        "classify_polarity",
        [](const std::string& predicate, const std::optional<std::vector<std::string>>& markers,
           const std::map<std::string, std::string>& overrides) {
            return std::string(kg::to_string(lexicon_from(markers, overrides).classify(predicate)));
        },
        py::arg("predicate"), py::arg("negative_markers") = std::nullopt,
        py::arg("overrides") = std::map<std::string, std::string>{},
        "Classify a relation predicate as 'positive' or 'negative'.");

    m.def(
        "cosine",
        [](const std::vector<float>& a, const std::vector<float>& b) {
            return embed::cosine(a, b);
        },
        py::arg("a"), py::arg("b"), "Cosine similarity clamped to [0, 1].");

    m.def(
        "hash_embed",
        [](const std::string& text, std::uint64_t seed, std::size_t dimension) {
            return embed::HashEmbeddingProvider(seed, dimension).embed_one(text);
        },
        py::arg("text"), py::arg("seed") = 0, py::arg("dimension") = 768,
        "Deterministic test-provider embedding.");

    m.def(
        "top_candidates",
        [](const std::vector<std::pair<std::string, std::string>>& entities,
           const std::string& mention, std::size_t candidate_count, std::uint64_t seed,
           std::size_t dimension) {
            std::vector<kg::Entity> typed;
            typed.reserve(entities.size());
            for (const auto& [id, name] : entities) typed.push_back({id, name, ""});
            embed::EmbeddingIndex index(
                typed, std::make_shared<embed::HashEmbeddingProvider>(seed, dimension));
            py::list out;
            for (const auto& c : index.top_candidates(mention, {candidate_count, "hash"})) {
                out.append(py::make_tuple(c.entity, c.score));
            }
            return out;
        },
        py::arg("entities"), py::arg("mention"), py::arg("candidate_count") = 10,
        py::arg("seed") = 0, py::arg("dimension") = 768,
        "Exact top-LC candidates over (id, name) pairs using the hash provider.");

    m.def(
        "parse_verdict",
        [](const std::string& response) -> std::optional<std::string> {
            const auto verdict = agents::parse_verdict(response);
            if (!verdict) return std::nullopt;
            return std::string(agents::to_string(*verdict));
        },
        py::arg("response"), "Extract the standalone YES/NO token, or None.");

    m.def(
        "score",
        [](const std::vector<bool>& labels, const std::vector<bool>& predictions) {
            if (labels.size() != predictions.size()) {
                throw InvalidInputError("labels and predictions must have equal length");
            }
            cohortio::Cohort cohort;
            cohort.disease = "d";
            std::vector<agents::PredictionOutcome> outcomes;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                cohort.visits.push_back({"v" + std::to_string(i), {"a"}, labels[i]});
                agents::PredictionOutcome outcome;
                outcome.visit_id = "v" + std::to_string(i);
                outcome.final_verdict =
                    predictions[i] ? agents::Verdict::Yes : agents::Verdict::No;
                outcomes.push_back(std::move(outcome));
            }
            const auto metrics = eval::score(outcomes, cohort);
            py::dict out;
            out["accuracy"] = metrics.accuracy;
            out["f1_weighted"] = metrics.f1_weighted;
            out["tp"] = metrics.confusion.tp;
            out["fp"] = metrics.confusion.fp;
            out["tn"] = metrics.confusion.tn;
            out["fn"] = metrics.confusion.fn;
            return out;
        },
        py::arg("labels"), py::arg("predictions"),
        "Accuracy and support-weighted F1 for boolean labels vs predictions.");

    m.def("format_mean_std", &eval::format_mean_std, py::arg("mean"), py::arg("sample_std"),
          "Render fractions as 'MM.MM±SS.SS' percentages.");

    m.def(
        "synth_cohort",
        [](std::uint64_t seed, std::size_t n, double prevalence,
           const std::vector<std::string>& vocab, const std::string& disease) {
            const auto cohort = cohortio::synth_cohort(seed, n, prevalence, vocab, disease);
            py::list visits;
            for (const auto& visit : cohort.visits) {
                py::dict v;
                v["visit_id"] = visit.visit_id;
                v["attributes"] = visit.attributes;
                v["label"] = visit.label.has_value() ? py::cast(*visit.label) : py::none();
                visits.append(v);
            }
            return visits;
        },
        py::arg("seed"), py::arg("n"), py::arg("prevalence"), py::arg("vocab"),
        py::arg("disease"), "Deterministic synthetic cohort with exact positive count.");

    m.def(
        "fingerprint",
        [](const std::string& model,
           const std::vector<std::pair<std::string, std::string>>& messages,
           double temperature) {
            llm::CompletionRequest req;
            req.model = model;
            req.temperature = temperature;
            for (const auto& [role, content] : messages) {
                req.messages.push_back({llm::role_from_string(role), content});
            }
            return llm::fingerprint(req);
        },
        py::arg("model"), py::arg("messages"), py::arg("temperature") = 0.0,
        "Stable cassette fingerprint of (model, messages, temperature).");

    m.def(
        "stage1_prompt",
        [](const std::string& strategy, const std::vector<std::string>& attributes,
           const std::string& disease, const std::string& positive_summary,
           const std::string& negative_summary) {
            return prompts::stage1_prompt(agents::strategy_from_string(strategy), attributes,
                                          disease, positive_summary, negative_summary);
        },
        py::arg("strategy"), py::arg("attributes"), py::arg("disease"),
        py::arg("positive_summary") = "", py::arg("negative_summary") = "",
        "Render the first-turn prompt for a strategy.");

    py::class_<kg::KgStore>(m, "KgStore")
        .def_static(
            "ingest",
            [](const std::string& entity_file, const std::string& triple_file) {
                return kg::KgStore::ingest(entity_file, triple_file);
            },
            py::arg("entity_file"), py::arg("triple_file"))
        .def_property_readonly("entity_count", &kg::KgStore::entity_count)
        .def_property_readonly("triple_count", &kg::KgStore::triple_count)
        .def_property_readonly("dangling_dropped",
                               [](const kg::KgStore& s) { return s.report().dangling_dropped; })
        .def(
            "neighborhood",
            [](const kg::KgStore& store, const std::string& entity_id, std::size_t cap) {
                return neighborhood_dict(
                    store.neighborhood(entity_id, kg::PolarityLexicon::defaults(), cap));
            },
            py::arg("entity_id"), py::arg("cap") = kg::KgStore::kNoCap,
            "Polarized 1-hop neighborhood under the default lexicon.");

    m.def(
        "replay_evaluate",
        [](const std::string& config_file, const std::string& cohort_file,
           const std::vector<std::string>& strategies, std::size_t runs) {
            util::set_log_level(util::LogLevel::Off);
            PipelineContext ctx(PipelineConfig::load(config_file));
            const auto cohort = cohortio::load_cohort(cohort_file);
            std::vector<agents::Strategy> typed;
            for (const auto& name : strategies) {
                typed.push_back(agents::strategy_from_string(name));
            }
            return eval::evaluate_to_report(ctx, cohort, typed, runs).json.dump(2);
        },
        py::arg("config_file"), py::arg("cohort_file"),
        py::arg("strategies") = std::vector<std::string>{"direct", "kerap"},
        py::arg("runs") = 1,
        "Run the offline pipeline over a cohort and return the report JSON.");
}
