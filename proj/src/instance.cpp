#include "gtsp/instance.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace gtsp {

using nlohmann::json;

void ProblemInstance::validate() const {
    if (tools.empty())
        throw ConfigError("instance lists no tools");
    const std::set<ToolId> tool_set(tools.begin(), tools.end());
    if (!tool_set.contains(current_tool))
        throw ConfigError("current_tool " + std::to_string(current_tool) +
                          " is not in the tool set");

    std::set<int> ids;
    for (const auto& p : proposals) {
        if (!ids.insert(p.id).second)
            throw ConfigError("duplicate proposal id " + std::to_string(p.id));
        if (!(p.rho >= 0.0 && p.rho <= 1.0))
            throw ConfigError("proposal " + std::to_string(p.id) + " has rho outside [0,1]");
        if (!tool_set.contains(p.tool))
            throw ConfigError("proposal " + std::to_string(p.id) + " uses unknown tool " +
                              std::to_string(p.tool));
    }

    if (params.H < 1)
        throw ConfigError("horizon H must be at least 1");
    if (params.k < 1)
        throw ConfigError("sparsity factor k must be at least 1");
    params.reward().validate();
}

void to_json(json& j, const ProblemInstance& inst) {
    json proposals = json::array();
    for (const auto& p : inst.proposals) {
        proposals.push_back(
            {{"id", p.id}, {"tool", p.tool}, {"x", p.u.x}, {"y", p.u.y}, {"rho", p.rho}});
    }
    j = json{{"tools", inst.tools},
             {"current_tool", inst.current_tool},
             {"proposals", std::move(proposals)},
             {"params",
              {{"H", inst.params.H},
               {"c", inst.params.c},
               {"l", inst.params.l},
               {"k", inst.params.k}}}};
}

void from_json(const json& j, ProblemInstance& inst) {
    inst.tools = j.at("tools").get<std::vector<ToolId>>();
    inst.current_tool = j.at("current_tool").get<ToolId>();
    inst.proposals.clear();
    for (const auto& p : j.at("proposals")) {
        GraspProposal w;
        w.id = p.at("id").get<int>();
        w.tool = p.at("tool").get<ToolId>();
        w.u = {p.at("x").get<double>(), p.at("y").get<double>()};
        w.rho = p.at("rho").get<double>();
        inst.proposals.push_back(w);
    }
    const auto& params = j.at("params");
    inst.params.H = params.at("H").get<int>();
    inst.params.c = params.at("c").get<double>();
    inst.params.l = params.at("l").get<double>();
    inst.params.k = params.value("k", 1);
}

std::string serialize_instance(const ProblemInstance& inst) {
    return json(inst).dump(2) + "\n";
}

ProblemInstance parse_instance(const std::string& text) {
    ProblemInstance inst;
    try {
        inst = json::parse(text).get<ProblemInstance>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed instance: ") + e.what());
    }
    inst.validate();
    return inst;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write instance file " + path.string());
    out << serialize_instance(inst);
}

json plan_to_json(const SolveReport& report) {
    std::vector<int> ids;
    ids.reserve(report.plan.steps.size());
    for (const auto& w : report.plan.steps)
        ids.push_back(w.id);
    json j{{"solver", report.solver},
           {"steps", ids},
           {"value", report.plan.value},
           {"solve_time_ms", report.solve_time_ms},
           {"nodes_expanded", report.nodes_expanded}};
    if (report.k)
        j["k"] = *report.k;
    return j;
}

} // namespace gtsp
