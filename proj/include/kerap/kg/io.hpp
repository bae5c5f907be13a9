#pragma once

#include <string>
#include <vector>

#include "kerap/kg/types.hpp"

namespace kerap::kg {

// TSV writers matching the ingest formats (header row, UTF-8, '#' comments).
void write_entities(const std::vector<Entity>& entities, const std::string& path);
void write_triples(const std::vector<RelationTriple>& triples, const std::string& path);

}  // namespace kerap::kg
