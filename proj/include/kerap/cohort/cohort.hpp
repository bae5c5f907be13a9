#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kerap::cohortio {

/// One clinical visit: the ordered medical attributes recorded at the visit
/// and, when known, whether the target disease was diagnosed at the next one.
struct PatientVisit {
    std::string visit_id;
    std::vector<std::string> attributes;
    std::optional<bool> label;
};

struct Cohort {
    std::string disease;  // target mention
    std::vector<PatientVisit> visits;

    std::size_t labeled_count() const;
    std::size_t positive_count() const;
    /// positives / labeled; nullopt when no visit carries a label.
    std::optional<double> prevalence() const;
};

/// JSON-lines cohort file. First line: {"disease": "<mention>"}; then one
/// {"visit_id", "attributes", "label"} object per visit (label true|false|null).
Cohort load_cohort(const std::string& path);
void write_cohort(const Cohort& cohort, const std::string& path);

/// Deterministic synthetic cohort: exactly round(n * prevalence) positive
/// labels, attributes drawn from `vocab`, everything driven by `seed`.
Cohort synth_cohort(std::uint64_t seed, std::size_t n, double prevalence,
                    const std::vector<std::string>& vocab, const std::string& disease);

}  // namespace kerap::cohortio
