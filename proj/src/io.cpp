#include "partsched/io.hpp"

#include <fstream>
#include <sstream>

#include "partsched/errors.hpp"

namespace partsched {

Json rational_to_json(const Rational& value)
{
    return Json::array({value.numerator(), value.denominator()});
}

Rational rational_from_json(const Json& value)
{
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_array() && value.size() == 2 && value[0].is_number_integer() && value[1].is_number_integer()) {
        const auto den = value[1].get<std::int64_t>();
        if (den == 0) throw FormatError("rational with zero denominator");
        return Rational(value[0].get<std::int64_t>(), den);
    }
    throw FormatError("expected an integer or [numerator, denominator], got " + value.dump());
}

namespace {

Json time_to_json(const Rational& value)
{
    if (value.denominator() == 1) return value.numerator();
    return rational_to_json(value);
}

template <class T>
T required(const Json& doc, const char* key)
{
    if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace

Json instance_to_json(const Instance& inst)
{
    Json doc;
    doc["machines"] = inst.machine_count;
    doc["resources"] = inst.resource_count;
    Json jobs = Json::array();
    for (const Job& job : inst.jobs) {
        Json j;
        j["id"] = job.id;
        j["p"] = time_to_json(job.p);
        j["resources"] = job.resources;
        if (job.weight != 1) j["weight"] = time_to_json(job.weight);
        jobs.push_back(std::move(j));
    }
    doc["jobs"] = std::move(jobs);
    if (!inst.machine_subsets.empty()) {
        Json subsets = Json::object();
        for (const auto& [r, machines] : inst.machine_subsets) subsets[std::to_string(r)] = machines;
        doc["machine_subsets"] = std::move(subsets);
    }
    if (inst.unmovable) doc["unmovable"] = true;
    if (!inst.capacities.empty()) doc["capacities"] = inst.capacities;
    if (inst.unrelated_times) {
        Json rows = Json::array();
        for (const auto& row : *inst.unrelated_times) {
            Json out = Json::array();
            for (const auto& x : row) out.push_back(time_to_json(x));
            rows.push_back(std::move(out));
        }
        doc["unrelated_times"] = std::move(rows);
    }
    return doc;
}

Instance instance_from_json(const Json& doc)
{
    if (!doc.is_object()) throw FormatError("instance document must be an object");
    Instance inst;
    inst.machine_count = required<int>(doc, "machines");
    inst.resource_count = required<int>(doc, "resources");
    if (!doc.contains("jobs") || !doc["jobs"].is_array()) throw FormatError("missing array 'jobs'");
    for (const auto& j : doc["jobs"]) {
        Job job;
        job.id = required<int>(j, "id");
        if (!j.contains("p")) throw FormatError("job without 'p'");
        job.p = rational_from_json(j["p"]);
        job.resources = required<std::vector<int>>(j, "resources");
        if (j.contains("weight")) job.weight = rational_from_json(j["weight"]);
        inst.jobs.push_back(std::move(job));
    }
    if (doc.contains("machine_subsets")) {
        const auto& subsets = doc["machine_subsets"];
        if (!subsets.is_object()) throw FormatError("'machine_subsets' must be an object");
        for (const auto& [key, machines] : subsets.items()) {
            int r = 0;
            try {
                r = std::stoi(key);
            } catch (const std::exception&) {
                throw FormatError("machine subset key '" + key + "' is not a resource id");
            }
            inst.machine_subsets[r] = machines.get<std::vector<int>>();
        }
    }
    if (doc.contains("unmovable")) inst.unmovable = required<bool>(doc, "unmovable");
    if (doc.contains("capacities")) inst.capacities = required<std::vector<int>>(doc, "capacities");
    if (doc.contains("unrelated_times")) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : doc["unrelated_times"]) {
            std::vector<Rational> out;
            for (const auto& x : row) out.push_back(rational_from_json(x));
            rows.push_back(std::move(out));
        }
        inst.unrelated_times = std::move(rows);
    }
    return inst;
}

Json schedule_to_json(const Schedule& sched)
{
    Json entries = Json::array();
    for (const auto& e : sched.entries) {
        Json j;
        j["job"] = e.job;
        j["machine"] = e.machine;
        j["start"] = rational_to_json(e.start);
        entries.push_back(std::move(j));
    }
    Json doc;
    doc["entries"] = std::move(entries);
    return doc;
}

Schedule schedule_from_json(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw FormatError("schedule document needs an 'entries' array");
    Schedule s;
    for (const auto& e : doc["entries"]) {
        ScheduleEntry entry;
        entry.job = required<int>(e, "job");
        entry.machine = required<int>(e, "machine");
        if (!e.contains("start")) throw FormatError("schedule entry without 'start'");
        entry.start = rational_from_json(e["start"]);
        s.entries.push_back(entry);
    }
    return s;
}

Json gadget_metadata_to_json(const GadgetInstance& gadget)
{
    Json doc;
    doc["kind"] = to_string(gadget.kind);
    doc["threshold"] = gadget.threshold ? rational_to_json(*gadget.threshold) : Json(nullptr);
    Json prov = Json::object();
    for (const auto& [k, v] : gadget.provenance) prov[k] = v;
    doc["provenance"] = std::move(prov);
    return doc;
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& doc)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

Instance read_instance(const std::filesystem::path& path)
{
    return instance_from_json(read_json(path));
}

Schedule read_schedule(const std::filesystem::path& path)
{
    return schedule_from_json(read_json(path));
}

} // namespace partsched
