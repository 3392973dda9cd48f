#include "dgame/report.hpp"

#include <fstream>

#include "dgame/errors.hpp"
#include "json.hpp"

namespace dgame {

namespace {

using nlohmann::json;

json to_json(const RunReport& r) {
  json j;
  j["report_version"] = r.report_version;
  j["tool"] = r.tool;
  j["command"] = r.command;
  j["command_line"] = r.command_line;
  j["graph"] = r.graph;
  j["params"] = r.params;
  j["results"] = r.results;
  j["items"] = r.items;
  j["nodes"] = r.nodes;
  j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace

std::string serialize(const RunReport& r) {
  // Keys come out sorted, so serialize(parse(serialize(x))) is byte-stable.
  return to_json(r).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParamError("parse_report: invalid JSON");
  try {
    RunReport r;
    r.report_version = j.at("report_version").get<int>();
    r.tool = j.at("tool").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.command_line = j.at("command_line").get<std::string>();
    r.graph = j.at("graph").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.results = j.at("results").get<std::map<std::string, std::string>>();
    r.items =
        j.at("items")
            .get<std::vector<std::map<std::string, std::string>>>();
    r.nodes = j.at("nodes").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParamError(std::string("parse_report: ") + e.what());
  }
}

void write_report_file(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParamError("cannot open report file " + path);
  out << serialize(r);
}

}  // namespace dgame
