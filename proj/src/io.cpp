#include "rap/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace rap {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string(what) + ": " + e.what());
    }
}

// Every file starts with {"format": "rap/<kind>", "version": N}.
void check_header(const json& j, const char* kind) {
    std::string tag = std::string("rap/") + kind;
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
        j["format"].get<std::string>() != tag)
        throw std::invalid_argument(tag + ": missing or wrong format tag");
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != kFormatVersion)
        throw std::invalid_argument(tag + ": unsupported version");
}

json header(const char* kind) {
    json j;
    j["format"] = std::string("rap/") + kind;
    j["version"] = kFormatVersion;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rational(const mpq_class& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

mpq_class read_rational(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw std::invalid_argument(std::string(what) + ": rational must be [\"num\", \"den\"]");
    mpz_class num, den;
    if (num.set_str(j[0].get<std::string>(), 10) != 0 ||
        den.set_str(j[1].get<std::string>(), 10) != 0)
        throw std::invalid_argument(std::string(what) + ": bad integer literal in rational");
    if (den == 0) throw std::invalid_argument(std::string(what) + ": zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string(what) + ": missing field '" + key + "'");
    try {
        return j[key].get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string(what) + ": field '" + key + "': " + e.what());
    }
}

}  // namespace

std::string write_polytope(const Polytope& P) {
    json j = header("polytope");
    j["dim"] = P.dim;
    j["num_facets"] = P.num_facets;
    json adj = json::array();
    for (auto [a, b] : P.adjacency) adj.push_back(json::array({a, b}));
    j["adjacency"] = std::move(adj);
    j["finite_vertices"] = P.finite_vertices;
    json ideal = json::array();
    for (const auto& v : P.ideal_vertices) {
        json pairs = json::array();
        for (auto [a, b] : v) pairs.push_back(json::array({a, b}));
        ideal.push_back(json{{"pairs", std::move(pairs)}});
    }
    j["ideal_vertices"] = std::move(ideal);
    return dump(j);
}

Polytope read_polytope(const std::string& text) {
    json j = parse(text, "polytope");
    check_header(j, "polytope");
    Polytope P;
    P.dim = field<int>(j, "dim", "polytope");
    P.num_facets = field<int>(j, "num_facets", "polytope");
    if (P.num_facets < 0) throw std::invalid_argument("polytope: negative num_facets");
    for (const auto& e : field<json>(j, "adjacency", "polytope")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("polytope: adjacency entry must be a pair");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || b < 0 || a >= P.num_facets || b >= P.num_facets || a == b)
            throw std::invalid_argument("polytope: adjacency pair out of range");
        P.adjacency.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(P.adjacency.begin(), P.adjacency.end());
    if (std::adjacent_find(P.adjacency.begin(), P.adjacency.end()) != P.adjacency.end())
        throw std::invalid_argument("polytope: duplicate adjacency pair");
    P.finite_vertices =
        field<std::vector<std::vector<int>>>(j, "finite_vertices", "polytope");
    for (const auto& v : field<json>(j, "ideal_vertices", "polytope")) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : field<json>(v, "pairs", "polytope: ideal vertex")) {
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("polytope: ideal pair must be [a, b]");
            pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        P.ideal_vertices.push_back(std::move(pairs));
    }
    P.build_index();
    return P;
}

std::string write_colouring(const Colouring& lam) {
    json j = header("colouring");
    j["palette"] = lam.palette_size;
    j["colours"] = lam.colour;
    return dump(j);
}

Colouring read_colouring(const std::string& text) {
    json j = parse(text, "colouring");
    check_header(j, "colouring");
    Colouring lam;
    lam.palette_size = field<int>(j, "palette", "colouring");
    lam.colour = field<std::vector<int>>(j, "colours", "colouring");
    return lam;
}

std::string write_state(const State& s) {
    json j = header("state");
    json stati = json::array();
    for (Status st : s.status) stati.push_back(st == Status::I ? "I" : "O");
    j["stati"] = std::move(stati);
    return dump(j);
}

State read_state(const std::string& text) {
    json j = parse(text, "state");
    check_header(j, "state");
    State s;
    for (const auto& e : field<json>(j, "stati", "state")) {
        std::string st = e.is_string() ? e.get<std::string>() : std::string();
        if (st == "I")
            s.status.push_back(Status::I);
        else if (st == "O")
            s.status.push_back(Status::O);
        else
            throw std::invalid_argument("state: status must be \"I\" or \"O\"");
    }
    return s;
}

std::string write_moves(const Moves& mv) {
    json j = header("moves");
    j["blocks"] = mv.blocks;
    return dump(j);
}

Moves read_moves(const std::string& text) {
    json j = parse(text, "moves");
    check_header(j, "moves");
    Moves mv;
    mv.blocks = field<std::vector<std::vector<int>>>(j, "blocks", "moves");
    return mv;
}

std::string write_gram(const std::vector<std::vector<mpq_class>>& G) {
    json j = header("gram");
    json rows = json::array();
    for (const auto& row : G) {
        json r = json::array();
        for (const auto& q : row) r.push_back(rational(q));
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return dump(j);
}

std::vector<std::vector<mpq_class>> read_gram(const std::string& text) {
    json j = parse(text, "gram");
    check_header(j, "gram");
    std::vector<std::vector<mpq_class>> G;
    if (!j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("gram: missing entries");
    const json& rows = j["entries"];
    for (const auto& r : rows) {
        if (!r.is_array()) throw std::invalid_argument("gram: row must be an array");
        std::vector<mpq_class> row;
        for (const auto& e : r) row.push_back(read_rational(e, "gram"));
        if (row.size() != rows.size())
            throw std::invalid_argument("gram: matrix must be square");
        G.push_back(std::move(row));
    }
    return G;
}

std::string write_character(const Character& chi) {
    json j = header("character");
    json values = json::array();
    for (const auto& cusp : chi.cusp_values) {
        json v = json::array();
        for (const auto& q : cusp) v.push_back(rational(q));
        values.push_back(std::move(v));
    }
    j["cusp_values"] = std::move(values);
    if (!chi.cocycle.empty()) {
        json z = json::array();
        for (const auto& q : chi.cocycle) z.push_back(rational(q));
        j["cocycle"] = std::move(z);
    }
    return dump(j);
}

Character read_character(const std::string& text) {
    json j = parse(text, "character");
    check_header(j, "character");
    Character chi;
    for (const auto& cusp : field<json>(j, "cusp_values", "character")) {
        if (!cusp.is_array())
            throw std::invalid_argument("character: cusp_values entry must be an array");
        std::vector<mpq_class> v;
        for (const auto& e : cusp) v.push_back(read_rational(e, "character"));
        chi.cusp_values.push_back(std::move(v));
    }
    if (j.contains("cocycle"))
        for (const auto& e : j["cocycle"])
            chi.cocycle.push_back(read_rational(e, "character"));
    return chi;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw std::invalid_argument("cannot read " + path);
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::invalid_argument("cannot write " + path);
}

}  // namespace rap
