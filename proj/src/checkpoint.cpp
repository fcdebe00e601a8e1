#include "gabm/checkpoint.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace gabm {

using nlohmann::json;

namespace {

// Typed field access that reports the full path of whatever is missing or malformed.
template <class Error>
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const json& at(std::string_view key) const
    {
        if (!node_.is_object()) {
            fail(path_, "expected an object");
        }
        auto it = node_.find(key);
        if (it == node_.end()) {
            fail(sub(key), "missing field");
        }
        return *it;
    }

    bool has(std::string_view key) const { return node_.is_object() && node_.contains(key); }

    template <class T>
    T get(std::string_view key) const
    {
        const json& v = at(key);
        return convert<T>(v, sub(key));
    }

    template <class T>
    static T convert(const json& v, const std::string& path)
    {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) {
                fail(path, "expected a boolean");
            }
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) {
                fail(path, "expected an integer");
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (v.is_number_unsigned()) {
                    return v.get<T>();
                }
                if (v.get<std::int64_t>() < 0) {
                    fail(path, "expected a non-negative integer");
                }
            } else if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
                fail(path, "integer out of range");
            } else if (!v.is_number_unsigned() && (v.get<std::int64_t>() < std::numeric_limits<T>::min() ||
                                                   v.get<std::int64_t>() > std::numeric_limits<T>::max())) {
                fail(path, "integer out of range");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) {
                fail(path, "expected a number");
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) {
                fail(path, "expected a string");
            }
        }
        return v.get<T>();
    }

    Reader child(std::string_view key) const { return Reader(at(key), sub(key)); }

    std::string sub(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }
    const std::string& path() const { return path_; }
    const json& node() const { return node_; }

    [[noreturn]] static void fail(const std::string& path, std::string_view what)
    {
        throw Error(fmt::format("{}: {}", path, what));
    }

private:
    const json& node_;
    std::string path_;
};

template <class Error, class T>
std::vector<T> int_list(const Reader<Error>& r, std::string_view key)
{
    const json& arr = r.at(key);
    const std::string path = r.sub(key);
    if (!arr.is_array()) {
        Reader<Error>::fail(path, "expected an array");
    }
    std::vector<T> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(Reader<Error>::template convert<T>(arr[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
}

std::string_view to_string(Location l)
{
    return l == Location::Home ? "home" : "grid";
}

std::string_view to_string(Polarity p)
{
    return p == Polarity::Positive ? "positive" : "negative";
}

template <class Error>
WorldConfig read_config(const Reader<Error>& r)
{
    WorldConfig c;
    c.initial_healthy = r.template get<int>("initial_healthy");
    c.initial_infected = r.template get<int>("initial_infected");
    c.contact_rate = r.template get<int>("contact_rate");
    c.infection_rate = r.template get<double>("infection_rate");
    c.step_count = r.template get<int>("step_count");
    const auto cond = r.template get<std::string>("condition");
    try {
        c.condition = parse_condition(cond);
    } catch (const ConfigError& e) {
        Reader<Error>::fail(r.sub("condition"), e.what());
    }
    c.seed = r.template get<std::uint64_t>("seed");
    c.run_name = r.template get<std::string>("run_name");
    return c;
}

const std::vector<std::string> kLogColumns = {"day",      "agent_id",       "age",          "gender",   "traits",
                                              "health_state", "day_infected", "prevalence_tenths", "stay_home",
                                              "conforming", "reasoning"};

} // namespace

json to_json(const WorldConfig& cfg)
{
    return json{{"initial_healthy", cfg.initial_healthy},
                {"initial_infected", cfg.initial_infected},
                {"contact_rate", cfg.contact_rate},
                {"infection_rate", cfg.infection_rate},
                {"step_count", cfg.step_count},
                {"condition", std::string(to_string(cfg.condition))},
                {"seed", cfg.seed},
                {"run_name", cfg.run_name}};
}

WorldConfig world_config_from_json(const json& j, std::string_view where)
{
    Reader<ConfigError> r(j, std::string(where));
    WorldConfig c = read_config(r);
    try {
        validate(c);
    } catch (const ConfigError& e) {
        throw ConfigError(where.empty() ? std::string(e.what()) : fmt::format("{}.{}", where, e.what()));
    }
    return c;
}

json to_json(const DayMetrics& m)
{
    return json{{"day", m.day},
                {"new_cases", m.new_cases},
                {"mobility_count", m.mobility_count},
                {"infected", m.infected_count},
                {"susceptible", m.susceptible_count},
                {"recovered", m.recovered_count},
                {"total_contacts", m.total_contacts}};
}

json checkpoint_document(const WorldState& world, const json& attachments)
{
    json doc;
    doc["format"] = kCheckpointFormat;
    doc["schema_version"] = kCheckpointSchemaVersion;
    doc["config"] = to_json(world.config);
    doc["day"] = world.day;
    doc["daily_new_cases"] = world.daily_new_cases;
    doc["early_stopped"] = world.early_stopped;
    doc["rng_state"] = world.rng.serialize();

    json citizens = json::array();
    for (const auto& c : world.citizens) {
        json traits = json::array();
        for (auto t : c.persona.traits) {
            traits.push_back(to_string(t));
        }
        citizens.push_back(json{{"id", c.persona.agent_id},
                                {"name", c.persona.name},
                                {"age", c.persona.age},
                                {"gender", to_string(c.persona.gender)},
                                {"traits", traits},
                                {"health", to_string(c.health.state)},
                                {"day_infected", c.health.day_infected ? json(*c.health.day_infected) : json(nullptr)},
                                {"location", to_string(c.location)},
                                {"agent_interaction", c.agent_interaction}});
    }
    doc["citizens"] = std::move(citizens);
    doc["track_contact_rate"] = world.track_contact_rate;
    doc["day_infected_is_4"] = world.day_infected_is_4;
    doc["list_new_cases"] = world.list_new_cases;

    json metrics = json::array();
    for (const auto& m : world.metrics) {
        metrics.push_back(to_json(m));
    }
    doc["metrics"] = std::move(metrics);

    json log = json::array();
    for (const auto& row : world.decision_log) {
        std::string traits;
        for (auto t : row.traits) {
            traits += t == Polarity::Positive ? '+' : '-';
        }
        log.push_back(json::array({row.day, row.agent_id, row.age, to_string(row.gender), traits, to_string(row.health_state),
                                   row.day_infected ? json(*row.day_infected) : json(nullptr), row.prevalence.tenths(),
                                   row.stay_home, row.conforming, row.reasoning}));
    }
    doc["decision_log_columns"] = kLogColumns;
    doc["decision_log"] = std::move(log);
    doc["attachments"] = attachments;
    return doc;
}

LoadedCheckpoint parse_checkpoint(const json& doc)
{
    using R = Reader<CheckpointError>;
    R root(doc, "");
    if (!doc.is_object()) {
        throw CheckpointError("checkpoint: expected a JSON object");
    }
    if (root.get<std::string>("format") != kCheckpointFormat) {
        R::fail("format", "not a gabm checkpoint");
    }
    const int version = root.get<int>("schema_version");
    if (version != kCheckpointSchemaVersion) {
        throw SchemaVersionError(fmt::format(
            "schema_version: checkpoint uses schema {} but this build reads schema {}; re-run with a matching build or "
            "migrate the file",
            version, kCheckpointSchemaVersion));
    }

    LoadedCheckpoint out;
    WorldState& w = out.world;
    w.config = read_config(root.child("config"));
    try {
        validate(w.config);
    } catch (const ConfigError& e) {
        throw CheckpointError(fmt::format("config.{}", e.what()));
    }
    w.day = root.get<int>("day");
    w.daily_new_cases = root.get<int>("daily_new_cases");
    w.early_stopped = root.get<bool>("early_stopped");
    try {
        w.rng = Rng::deserialize(root.get<std::string>("rng_state"));
    } catch (const std::invalid_argument& e) {
        R::fail("rng_state", e.what());
    }
    if (w.day < 0) {
        R::fail("day", "must be >= 0");
    }

    const json& cits = root.at("citizens");
    if (!cits.is_array()) {
        R::fail("citizens", "expected an array");
    }
    const int n = w.config.population();
    if (static_cast<int>(cits.size()) != n) {
        R::fail("citizens", fmt::format("expected {} citizens, found {}", n, cits.size()));
    }
    for (std::size_t i = 0; i < cits.size(); ++i) {
        R c(cits[i], fmt::format("citizens[{}]", i));
        Citizen cit;
        cit.persona.agent_id = c.get<AgentId>("id");
        if (cit.persona.agent_id != static_cast<AgentId>(i)) {
            R::fail(c.sub("id"), "ids must equal the citizen's position");
        }
        cit.persona.name = c.get<std::string>("name");
        cit.persona.age = c.get<int>("age");
        if (cit.persona.age < kMinAge || cit.persona.age > kMaxAge) {
            R::fail(c.sub("age"), "out of range");
        }
        try {
            cit.persona.gender = parse_gender(c.get<std::string>("gender"));
        } catch (const ConfigError& e) {
            R::fail(c.sub("gender"), e.what());
        }
        const json& traits = c.at("traits");
        if (!traits.is_array() || traits.size() != kTraitFactorCount) {
            R::fail(c.sub("traits"), "expected 5 polarities");
        }
        for (std::size_t t = 0; t < kTraitFactorCount; ++t) {
            const auto s = R::convert<std::string>(traits[t], fmt::format("{}[{}]", c.sub("traits"), t));
            if (s != "positive" && s != "negative") {
                R::fail(fmt::format("{}[{}]", c.sub("traits"), t), "expected positive or negative");
            }
            cit.persona.traits[t] = s == "positive" ? Polarity::Positive : Polarity::Negative;
        }
        try {
            cit.health.state = parse_health_state(c.get<std::string>("health"));
        } catch (const ConfigError& e) {
            R::fail(c.sub("health"), e.what());
        }
        const json& di = c.at("day_infected");
        if (!di.is_null()) {
            cit.health.day_infected = R::convert<int>(di, c.sub("day_infected"));
        }
        if (cit.health.is_infected() != cit.health.day_infected.has_value()) {
            R::fail(c.sub("day_infected"), "present iff health is Infected");
        }
        if (cit.health.day_infected && (*cit.health.day_infected < 0 || *cit.health.day_infected > kInfectionDays)) {
            R::fail(c.sub("day_infected"), "out of range");
        }
        const auto loc = c.get<std::string>("location");
        if (loc != "home" && loc != "grid") {
            R::fail(c.sub("location"), "expected home or grid");
        }
        cit.location = loc == "home" ? Location::Home : Location::Grid;
        cit.agent_interaction = int_list<CheckpointError, AgentId>(c, "agent_interaction");
        for (AgentId p : cit.agent_interaction) {
            if (p < 0 || p >= n || p == cit.persona.agent_id) {
                R::fail(c.sub("agent_interaction"), "invalid partner id");
            }
        }
        w.citizens.push_back(std::move(cit));
    }

    w.track_contact_rate = int_list<CheckpointError, int>(root, "track_contact_rate");
    w.day_infected_is_4 = int_list<CheckpointError, int>(root, "day_infected_is_4");
    w.list_new_cases = int_list<CheckpointError, int>(root, "list_new_cases");
    const auto expected = static_cast<std::size_t>(w.day);
    for (auto [name, size] : {std::pair{"track_contact_rate", w.track_contact_rate.size()},
                              std::pair{"day_infected_is_4", w.day_infected_is_4.size()},
                              std::pair{"list_new_cases", w.list_new_cases.size()}}) {
        if (size != expected) {
            R::fail(name, fmt::format("expected {} entries (one per completed day), found {}", expected, size));
        }
    }

    const json& metrics = root.at("metrics");
    if (!metrics.is_array() || metrics.size() != expected) {
        R::fail("metrics", fmt::format("expected an array with {} entries", expected));
    }
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        R m(metrics[i], fmt::format("metrics[{}]", i));
        DayMetrics d;
        d.day = m.get<int>("day");
        d.new_cases = m.get<int>("new_cases");
        d.mobility_count = m.get<int>("mobility_count");
        d.infected_count = m.get<int>("infected");
        d.susceptible_count = m.get<int>("susceptible");
        d.recovered_count = m.get<int>("recovered");
        d.total_contacts = m.get<int>("total_contacts");
        w.metrics.push_back(d);
    }

    if (root.get<std::vector<std::string>>("decision_log_columns") != kLogColumns) {
        R::fail("decision_log_columns", "unexpected column layout");
    }
    const json& log = root.at("decision_log");
    if (!log.is_array()) {
        R::fail("decision_log", "expected an array");
    }
    w.decision_log.reserve(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        const std::string path = fmt::format("decision_log[{}]", i);
        const json& r = log[i];
        if (!r.is_array() || r.size() != kLogColumns.size()) {
            R::fail(path, "malformed row");
        }
        auto col = [&](std::size_t k) { return fmt::format("{}.{}", path, kLogColumns[k]); };
        DecisionLogRow row;
        row.day = R::convert<int>(r[0], col(0));
        row.agent_id = R::convert<AgentId>(r[1], col(1));
        row.age = R::convert<int>(r[2], col(2));
        try {
            row.gender = parse_gender(R::convert<std::string>(r[3], col(3)));
            const auto traits = R::convert<std::string>(r[4], col(4));
            if (traits.size() != kTraitFactorCount) {
                R::fail(col(4), "expected 5 polarity marks");
            }
            for (std::size_t t = 0; t < kTraitFactorCount; ++t) {
                row.traits[t] = traits[t] == '+' ? Polarity::Positive : Polarity::Negative;
            }
            row.health_state = parse_health_state(R::convert<std::string>(r[5], col(5)));
        } catch (const ConfigError& e) {
            R::fail(path, e.what());
        }
        if (!r[6].is_null()) {
            row.day_infected = R::convert<int>(r[6], col(6));
        }
        row.prevalence = PrevalencePct::from_tenths(R::convert<long>(r[7], col(7)));
        row.stay_home = R::convert<bool>(r[8], col(8));
        row.conforming = R::convert<bool>(r[9], col(9));
        row.reasoning = R::convert<std::string>(r[10], col(10));
        w.decision_log.push_back(std::move(row));
    }

    out.attachments = root.has("attachments") ? root.at("attachments") : json::object();
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError(fmt::format("cannot create directory {}: {}", path.parent_path().string(), ec.message()));
        }
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("cannot open {} for writing", tmp.string()));
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) {
            throw IoError(fmt::format("write to {} failed", tmp.string()));
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_checkpoint(const WorldState& world, const std::filesystem::path& path, const json& attachments)
{
    write_file_atomic(path, checkpoint_document(world, attachments).dump());
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CheckpointError(fmt::format("{}: not a complete checkpoint document (parse error at byte {})", path.string(), e.byte));
    }
    try {
        return parse_checkpoint(doc);
    } catch (const SchemaVersionError& e) {
        throw SchemaVersionError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const CheckpointError& e) {
        throw CheckpointError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

} // namespace gabm
