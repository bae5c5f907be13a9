#include "kerap/kg/io.hpp"

#include <fstream>

#include "kerap/util/errors.hpp"

namespace kerap::kg {

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open for writing: " + path);
    return out;
}
}  // namespace

void write_entities(const std::vector<Entity>& entities, const std::string& path) {
    auto out = open_out(path);
    out << "id\tname\tcategory\n";
    for (const auto& e : entities) {
        out << e.id << '\t' << e.name << '\t' << e.category << '\n';
    }
}

void write_triples(const std::vector<RelationTriple>& triples, const std::string& path) {
    auto out = open_out(path);
    out << "head\tpredicate\ttail\n";
    for (const auto& t : triples) {
        out << t.head << '\t' << t.predicate << '\t' << t.tail << '\n';
    }
}

}  // namespace kerap::kg
