#include "elena/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elena/errors.hpp"

#include "json.hpp"

namespace elena {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (in >> field) {
        fields.push_back(field);
    }
    return fields;
}

bool parse_int(const std::string& s, long long& out) {
    try {
        std::size_t used = 0;
        out = std::stoll(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_real(const std::string& s, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

// Keyword-section scaffold shared by the TSP and CVRP parsers. Keyword lines
// are "KEY : value" (colon optional spacing); section lines are a bare
// section name followed by data rows.
struct SectionDocument {
    std::map<std::string, std::string> keywords;
    std::map<std::string, std::vector<std::vector<std::string>>> sections;
    bool saw_eof = false;
};

const std::vector<std::string> kSectionNames = {
    "NODE_COORD_SECTION", "DEMAND_SECTION", "DEPOT_SECTION",
};

SectionDocument parse_sections(const std::string& text) {
    SectionDocument doc;
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        const std::string line = trim(lines[i]);
        if (line.empty()) {
            ++i;
            continue;
        }
        const std::string upper_line = upper(line);
        if (upper_line == "EOF") {
            doc.saw_eof = true;
            break;
        }
        const auto section =
            std::find(kSectionNames.begin(), kSectionNames.end(), upper_line);
        if (section != kSectionNames.end()) {
            auto& rows = doc.sections[*section];
            ++i;
            while (i < lines.size()) {
                const std::string data = trim(lines[i]);
                if (data.empty()) {
                    ++i;
                    continue;
                }
                // A row starts with a number (possibly negative, e.g. the
                // depot terminator); anything else is the next keyword.
                long long ignored = 0;
                const auto fields = split_fields(data);
                if (!parse_int(fields.front(), ignored)) {
                    double real_ignored = 0.0;
                    if (!parse_real(fields.front(), real_ignored)) {
                        break;
                    }
                }
                rows.push_back(fields);
                ++i;
            }
            continue;
        }
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("unrecognized line: '" + line + "'");
        }
        const std::string key = upper(trim(line.substr(0, colon)));
        const std::string value = trim(line.substr(colon + 1));
        doc.keywords[key] = value;
        ++i;
    }
    return doc;
}

const std::string& require_keyword(const SectionDocument& doc, const std::string& key) {
    const auto it = doc.keywords.find(key);
    if (it == doc.keywords.end()) {
        throw ParseError("missing mandatory section: " + key);
    }
    return it->second;
}

const std::vector<std::vector<std::string>>& require_section(const SectionDocument& doc,
                                                             const std::string& key) {
    const auto it = doc.sections.find(key);
    if (it == doc.sections.end()) {
        throw ParseError("missing mandatory section: " + key);
    }
    return it->second;
}

int parse_dimension(const SectionDocument& doc) {
    long long dimension = 0;
    if (!parse_int(require_keyword(doc, "DIMENSION"), dimension) || dimension < 1) {
        throw ParseError("DIMENSION must be a positive integer");
    }
    return static_cast<int>(dimension);
}

Metric parse_metric(const SectionDocument& doc) {
    auto it = doc.keywords.find("EDGE_WEIGHT_TYPE");
    const std::string type = it == doc.keywords.end() ? "EUC_2D" : upper(it->second);
    if (type == "EUC_2D") {
        return Metric::RoundedEuclidean;
    }
    if (type == "REAL_EUC_2D") {
        return Metric::RealEuclidean;
    }
    throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + type);
}

std::vector<std::array<double, 2>> parse_coordinates(const SectionDocument& doc, int dimension) {
    const auto& rows = require_section(doc, "NODE_COORD_SECTION");
    if (rows.size() != static_cast<std::size_t>(dimension)) {
        throw ParseError("NODE_COORD_SECTION row count does not match DIMENSION");
    }
    std::vector<std::array<double, 2>> coordinates(dimension);
    std::vector<bool> seen(dimension, false);
    for (const auto& row : rows) {
        long long id = 0;
        double x = 0.0;
        double y = 0.0;
        if (row.size() != 3 || !parse_int(row[0], id) || !parse_real(row[1], x) ||
            !parse_real(row[2], y)) {
            throw ParseError("malformed NODE_COORD_SECTION row");
        }
        if (id < 1 || id > dimension || seen[id - 1]) {
            throw ParseError("NODE_COORD_SECTION node id out of range or repeated");
        }
        seen[id - 1] = true;
        coordinates[id - 1] = {x, y};
    }
    return coordinates;
}

// Last "-k<digits>" component of an instance name, e.g. "A-n32-k05" -> 5.
std::optional<int> vehicles_from_name(const std::string& name) {
    const std::size_t pos = name.rfind("-k");
    if (pos == std::string::npos) {
        return std::nullopt;
    }
    const std::string digits = name.substr(pos + 2);
    long long value = 0;
    if (digits.empty() || !parse_int(digits, value) || value < 1) {
        return std::nullopt;
    }
    return static_cast<int>(value);
}

// First integer following a (case-insensitive) marker word, e.g.
// "No of trucks: 5" -> 5.
std::optional<double> number_after_marker(const std::string& text, const std::string& marker) {
    const std::string haystack = upper(text);
    const std::size_t at = haystack.find(upper(marker));
    if (at == std::string::npos) {
        return std::nullopt;
    }
    std::size_t i = at + marker.size();
    while (i < text.size() &&
           !(std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '-' ||
             text[i] == '+')) {
        ++i;
    }
    std::size_t j = i;
    while (j < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
            text[j] == '-' || text[j] == '+' || text[j] == 'e' || text[j] == 'E')) {
        ++j;
    }
    double value = 0.0;
    if (i == j || !parse_real(text.substr(i, j - i), value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

VrpFileModel parse_vrp_file_model(const std::string& text) {
    const SectionDocument doc = parse_sections(text);
    VrpFileModel model;
    if (const auto it = doc.keywords.find("NAME"); it != doc.keywords.end()) {
        model.name = it->second;
    }
    if (const auto it = doc.keywords.find("COMMENT"); it != doc.keywords.end()) {
        model.comment = it->second;
    }
    model.dimension = parse_dimension(doc);
    long long capacity = 0;
    if (!parse_int(require_keyword(doc, "CAPACITY"), capacity) || capacity < 1) {
        throw ParseError("CAPACITY must be a positive integer");
    }
    model.capacity = static_cast<int>(capacity);
    model.edge_weight_type = doc.keywords.count("EDGE_WEIGHT_TYPE")
                                 ? doc.keywords.at("EDGE_WEIGHT_TYPE")
                                 : "EUC_2D";
    model.coordinates = parse_coordinates(doc, model.dimension);

    const auto& demand_rows = require_section(doc, "DEMAND_SECTION");
    if (demand_rows.size() != static_cast<std::size_t>(model.dimension)) {
        throw ParseError("DEMAND_SECTION row count does not match DIMENSION");
    }
    model.demands.assign(model.dimension, 0);
    std::vector<bool> seen(model.dimension, false);
    for (const auto& row : demand_rows) {
        long long id = 0;
        long long demand = 0;
        if (row.size() != 2 || !parse_int(row[0], id) || !parse_int(row[1], demand)) {
            throw ParseError("malformed DEMAND_SECTION row");
        }
        if (id < 1 || id > model.dimension || seen[id - 1]) {
            throw ParseError("DEMAND_SECTION node id out of range or repeated");
        }
        seen[id - 1] = true;
        model.demands[id - 1] = static_cast<int>(demand);
    }

    const auto& depot_rows = require_section(doc, "DEPOT_SECTION");
    std::vector<int> depots;
    for (const auto& row : depot_rows) {
        for (const auto& field : row) {
            long long id = 0;
            if (!parse_int(field, id)) {
                throw ParseError("malformed DEPOT_SECTION row");
            }
            if (id == -1) {
                goto depot_done;
            }
            if (id < 1 || id > model.dimension) {
                throw ParseError("DEPOT_SECTION node id out of range");
            }
            depots.push_back(static_cast<int>(id) - 1);
        }
    }
depot_done:
    if (depots.size() != 1) {
        throw ParseError("DEPOT_SECTION must list exactly one depot");
    }
    model.depot = depots.front();

    model.vehicle_count = vehicles_from_name(model.name);
    if (!model.vehicle_count) {
        if (const auto trucks = number_after_marker(model.comment, "trucks")) {
            model.vehicle_count = static_cast<int>(*trucks);
        }
    }
    model.best_known = number_after_marker(model.comment, "optimal value");
    return model;
}

VrpInstance parse_vrp(const std::string& text) {
    const VrpFileModel model = parse_vrp_file_model(text);
    if (!model.vehicle_count) {
        throw ParseError("vehicle count not found in NAME suffix or COMMENT");
    }
    VrpInstance instance;
    instance.name = model.name;
    instance.comment = model.comment;
    instance.coordinates = model.coordinates;
    instance.demands = model.demands;
    instance.capacity = model.capacity;
    instance.vehicle_count = *model.vehicle_count;
    instance.depot = model.depot;
    instance.best_known = model.best_known;
    {
        SectionDocument doc;  // metric mapping only
        doc.keywords["EDGE_WEIGHT_TYPE"] = model.edge_weight_type;
        instance.metric = parse_metric(doc);
    }
    instance.validate();
    return instance;
}

TspInstance parse_tsp(const std::string& text) {
    const SectionDocument doc = parse_sections(text);
    TspInstance instance;
    if (const auto it = doc.keywords.find("NAME"); it != doc.keywords.end()) {
        instance.name = it->second;
    }
    const int dimension = parse_dimension(doc);
    instance.metric = parse_metric(doc);
    instance.coordinates = parse_coordinates(doc, dimension);
    instance.validate();
    return instance;
}

McpInstance parse_dimacs_clq(const std::string& text) {
    const auto lines = split_lines(text);
    std::optional<McpInstance> instance;
    long long vertex_count = 0;
    for (const auto& raw : lines) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == 'c') {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields[0] == "p") {
            if (instance) {
                throw ParseError("duplicate problem line");
            }
            long long edge_count = 0;
            if (fields.size() != 4 || fields[1] != "edge" ||
                !parse_int(fields[2], vertex_count) || !parse_int(fields[3], edge_count) ||
                vertex_count < 0 || edge_count < 0) {
                throw ParseError("malformed problem line, expected 'p edge N M'");
            }
            instance.emplace(static_cast<int>(vertex_count));
            continue;
        }
        if (fields[0] == "e") {
            if (!instance) {
                throw ParseError("edge line before problem line");
            }
            long long u = 0;
            long long v = 0;
            if (fields.size() != 3 || !parse_int(fields[1], u) || !parse_int(fields[2], v)) {
                throw ParseError("malformed edge line");
            }
            if (u < 1 || v < 1 || u > vertex_count || v > vertex_count) {
                throw ParseError("edge endpoint out of range");
            }
            if (u == v) {
                throw ParseError("self-loops are not allowed");
            }
            instance->add_edge(static_cast<int>(u) - 1, static_cast<int>(v) - 1);
            continue;
        }
        throw ParseError("unrecognized line: '" + line + "'");
    }
    if (!instance) {
        throw ParseError("missing problem line");
    }
    return *instance;
}

namespace {

std::string format_coordinate(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

const char* metric_keyword(Metric metric) {
    return metric == Metric::RoundedEuclidean ? "EUC_2D" : "REAL_EUC_2D";
}

}  // namespace

std::string write_tsp(const TspInstance& instance, const std::string& comment) {
    instance.validate();
    std::ostringstream out;
    out << "NAME : " << instance.name << "\n";
    out << "TYPE : TSP\n";
    if (!comment.empty()) {
        out << "COMMENT : " << comment << "\n";
    }
    out << "DIMENSION : " << instance.city_count() << "\n";
    out << "EDGE_WEIGHT_TYPE : " << metric_keyword(instance.metric) << "\n";
    out << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < instance.coordinates.size(); ++i) {
        out << (i + 1) << " " << format_coordinate(instance.coordinates[i][0]) << " "
            << format_coordinate(instance.coordinates[i][1]) << "\n";
    }
    out << "EOF\n";
    return out.str();
}

std::string write_vrp(const VrpInstance& instance) {
    instance.validate();
    std::ostringstream out;
    out << "NAME : " << instance.name << "\n";
    std::string comment = instance.comment;
    if (comment.empty()) {
        std::ostringstream c;
        c << "(No of trucks: " << instance.vehicle_count;
        if (instance.best_known) {
            c << ", Optimal value: " << format_double(*instance.best_known);
        }
        if (!instance.fleet_feasible()) {
            c << ", warning: total demand exceeds fleet capacity";
        }
        c << ")";
        comment = c.str();
    }
    out << "COMMENT : " << comment << "\n";
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << instance.coordinates.size() << "\n";
    out << "EDGE_WEIGHT_TYPE : " << metric_keyword(instance.metric) << "\n";
    out << "CAPACITY : " << instance.capacity << "\n";
    out << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < instance.coordinates.size(); ++i) {
        out << (i + 1) << " " << format_coordinate(instance.coordinates[i][0]) << " "
            << format_coordinate(instance.coordinates[i][1]) << "\n";
    }
    out << "DEMAND_SECTION\n";
    for (std::size_t i = 0; i < instance.demands.size(); ++i) {
        out << (i + 1) << " " << instance.demands[i] << "\n";
    }
    out << "DEPOT_SECTION\n";
    out << (instance.depot + 1) << "\n";
    out << "-1\n";
    out << "EOF\n";
    return out.str();
}

std::string write_dimacs_clq(const McpInstance& instance, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        out << "c " << comment << "\n";
    }
    out << "p edge " << instance.vertex_count() << " " << instance.edge_count() << "\n";
    for (int u = 0; u < instance.vertex_count(); ++u) {
        for (int v = u + 1; v < instance.vertex_count(); ++v) {
            if (instance.adjacent(u, v)) {
                out << "e " << (u + 1) << " " << (v + 1) << "\n";
            }
        }
    }
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char byte : text) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

std::string config_json(const SolverConfig& config) {
    nlohmann::json j;
    j["population_size"] = config.population_size;
    j["subpopulation_count"] = config.subpopulation_count;
    j["initial_mutation_rate"] = config.initial_mutation_rate;
    j["initial_mutation_resistance"] = config.initial_tags.mutation_resistance;
    j["initial_crossover_affinity"] = config.initial_tags.crossover_affinity;
    j["initial_stability_score"] = config.initial_tags.stability_score;
    j["delta_mr"] = config.delta_mr;
    j["delta_ss"] = config.delta_ss;
    j["delta_ca"] = config.delta_ca;
    j["hgt_period"] = config.hgt_period;
    j["hgt_probability"] = config.hgt_probability;
    j["stability_threshold"] = config.stability_threshold;
    j["min_segment_length"] = config.min_segment_length;
    j["elitism_fraction"] = config.elitism_fraction;
    j["patience"] = config.patience;
    j["max_generations"] = config.max_generations;
    j["master_seed"] = config.master_seed;
    return j.dump(2) + "\n";
}

std::string config_digest(const SolverConfig& config) {
    return fnv1a_hex(config_json(config));
}

namespace {

std::string sanitize_component(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ||
                        c == '_';
        out += ok ? c : '_';
    }
    return out;
}

}  // namespace

std::string trajectory_file_name(const ResultRecord& record) {
    return sanitize_component(record.instance_id) + "__" +
           sanitize_component(record.algorithm_id) + "__s" + std::to_string(record.seed) +
           "__" + sanitize_component(record.config_digest) + ".trajectory.csv";
}

void write_results(const ResultsBundle& bundle, const std::filesystem::path& destination) {
    std::error_code ec;
    std::filesystem::create_directories(destination, ec);
    if (ec) {
        throw IoError("cannot create destination directory: " + destination.string());
    }

    auto records = bundle.records;
    std::sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
        if (a.instance_id != b.instance_id) {
            return a.instance_id < b.instance_id;
        }
        if (a.algorithm_id != b.algorithm_id) {
            return a.algorithm_id < b.algorithm_id;
        }
        if (a.seed != b.seed) {
            return a.seed < b.seed;
        }
        return a.config_digest < b.config_digest;
    });

    std::ostringstream summary;
    summary << "instance,algorithm,seed,config,best,generations,wall_time_s\n";
    for (const auto& record : records) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", record.wall_time_seconds);
        summary << csv_quote(record.instance_id) << "," << csv_quote(record.algorithm_id) << ","
                << record.seed << "," << csv_quote(record.config_digest) << ","
                << format_double(record.best_objective) << "," << record.generations << ","
                << wall << "\n";
    }
    write_text_file(destination / "summary.csv", summary.str());

    for (const auto& [file_name, values] : bundle.trajectories) {
        std::ostringstream trajectory;
        trajectory << "generation,best_objective\n";
        for (std::size_t g = 0; g < values.size(); ++g) {
            trajectory << g << "," << format_double(values[g]) << "\n";
        }
        write_text_file(destination / file_name, trajectory.str());
    }

    for (const auto& [digest, json_text] : bundle.configs) {
        write_text_file(destination / ("config-" + sanitize_component(digest) + ".json"),
                        json_text);
    }
}

}  // namespace elena
