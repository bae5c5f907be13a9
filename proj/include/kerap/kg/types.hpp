#pragma once

#include <string>
#include <vector>

namespace kerap::kg {

struct Entity {
    std::string id;
    std::string name;
    std::string category;
};

struct RelationTriple {
    std::string head;       // entity id
    std::string predicate;  // relation label
    std::string tail;       // entity id

    bool operator==(const RelationTriple&) const = default;
};

enum class Polarity { Positive, Negative };

inline const char* to_string(Polarity p) {
    return p == Polarity::Positive ? "positive" : "negative";
}

/// Incident triples of one entity, split by relation polarity.
struct PolarizedNeighborhood {
    std::string entity;  // entity id
    std::vector<RelationTriple> positive;
    std::vector<RelationTriple> negative;
};

}  // namespace kerap::kg
