#include "stub_responder.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <vector>

#include "kerap/prompts/templates.hpp"
#include "kerap/util/hash.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::tools {

namespace {

std::vector<std::string> tokens_of(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    for (char c : util::to_lower(text)) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            token.push_back(c);
        } else if (!token.empty()) {
            out.push_back(token);
            token.clear();
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

std::string first_line_value(const std::string& text, const std::string& prefix) {
    const auto pos = text.find(prefix);
    if (pos == std::string::npos) return "";
    const auto end = text.find('\n', pos);
    return text.substr(pos + prefix.size(),
                       (end == std::string::npos ? text.size() : end) - pos - prefix.size());
}

std::string answer_linkage(const std::string& user) {
    std::string mention = first_line_value(user, "Mention: ");
    if (mention.size() >= 2 && mention.front() == '"' && mention.back() == '"') {
        mention = mention.substr(1, mention.size() - 2);
    }
    const auto mention_tokens = tokens_of(mention);

    std::vector<std::string> names;
    for (const auto& line : util::split(user, '\n')) {
        const auto dot = line.find(". ");
        if (dot == std::string::npos || dot == 0) continue;
        const auto number = line.substr(0, dot);
        if (!std::all_of(number.begin(), number.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c)) != 0;
            })) {
            continue;
        }
        names.push_back(line.substr(dot + 2));
    }
    if (names.empty()) return "1";

    std::size_t best = 0;
    long best_score = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
        long score = util::iequals(names[i], mention) ? 1000 : 0;
        const auto name_tokens = tokens_of(names[i]);
        for (const auto& t : name_tokens) {
            if (std::find(mention_tokens.begin(), mention_tokens.end(), t) !=
                mention_tokens.end()) {
                ++score;
            }
        }
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return std::to_string(best + 1);
}

std::string answer_retrieval(const std::string& user) {
    const auto disease = first_line_value(user, "Disease: ");
    const bool positive = user.find("inclusion criteria:") != std::string::npos;

    // Collect entity names from the "(head, predicate, tail)" lines, then drop
    // the hub entity that appears on every line.
    std::vector<std::string> sides;
    std::map<std::string, std::size_t> frequency;
    std::size_t lines = 0;
    for (const auto& line : util::split(user, '\n')) {
        if (line.empty() || line.front() != '(' || line.back() != ')') continue;
        const auto parts = util::split(line.substr(1, line.size() - 2), ',');
        if (parts.size() != 3) continue;
        ++lines;
        const auto head = util::trim(parts[0]);
        const auto tail = util::trim(parts[2]);
        for (const auto& side : {head, tail}) ++frequency[side];
        sides.push_back(head);
        sides.push_back(tail);
    }
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& side : sides) {
        if (frequency[side] * 2 > lines && lines > 1) continue;  // hub
        if (seen.insert(side).second) names.push_back(side);
        if (names.size() == 8) break;
    }
    const auto listed = names.empty() ? std::string("the listed relations")
                                      : util::join(names, ", ");
    if (positive) {
        return "Key diagnosis factors for " + disease + " include: " + listed +
               ". These indicators support the inclusion criteria when assessing whether the "
               "patient is at risk.";
    }
    return "Unrelated factors in diagnosing " + disease + " include " + listed +
           ". These factors do not contribute to the diagnosis and support exclusion.";
}

std::string answer_prediction(const std::string& user) {
    const bool stage2 = user.find(prompts::kStage2Instruction) != std::string::npos;
    bool yes;
    if (user.find("Nontraumatic subarachnoid hemorrhage") != std::string::npos) {
        yes = !stage2;  // initial overcall, corrected on the cautious pass
    } else if (user.find("glomerulonephritis") != std::string::npos) {
        yes = true;
    } else {
        yes = util::fnv1a64(user) % 100 < 42;
    }
    if (yes) {
        return "YES. Reasoning: The recorded attributes indicate an elevated risk that the "
               "patient will develop the target disease by the next visit.";
    }
    return "NO. Reasoning: The recorded attributes do not establish the diagnostic criteria "
           "for the target disease at the next visit.";
}

}  // namespace

std::string scripted_response(const llm::CompletionRequest& req) {
    std::string system;
    std::string last_user;
    for (const auto& m : req.messages) {
        if (m.role == llm::Role::System) system = m.content;
        if (m.role == llm::Role::User) last_user = m.content;
    }
    if (last_user == prompts::kReaskInstruction) {
        return util::fnv1a64(system + last_user) % 2 == 0 ? "YES" : "NO";
    }
    if (system == prompts::linkage_system()) return answer_linkage(last_user);
    if (system == prompts::retrieval_system()) return answer_retrieval(last_user);
    return answer_prediction(last_user);
}

}  // namespace kerap::tools
