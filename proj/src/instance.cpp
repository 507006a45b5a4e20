#include "twopt/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "twopt/rng.hpp"

namespace twopt {

namespace {

std::size_t triangle_size(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

void require_size(int n) {
    if (n < 4)
        throw std::invalid_argument("instance needs at least 4 nodes, got " + std::to_string(n));
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

} // namespace

const char* kind_name(InstanceKind kind) {
    switch (kind) {
    case InstanceKind::ExplicitMatrix:
        return "explicit";
    case InstanceKind::Euclidean:
        return "euclidean";
    case InstanceKind::TsplibEuc2d:
        return "euc2d";
    case InstanceKind::TsplibCeil2d:
        return "ceil2d";
    }
    return "?";
}

Instance Instance::explicit_matrix(int n, std::vector<double> upper_triangle) {
    require_size(n);
    if (upper_triangle.size() != triangle_size(n))
        throw std::invalid_argument("upper triangle size mismatch");
    for (double c : upper_triangle)
        if (!(c >= 0.0))
            throw std::invalid_argument("costs must be non-negative");
    Instance inst;
    inst.n_ = n;
    inst.kind_ = InstanceKind::ExplicitMatrix;
    inst.tri_ = std::move(upper_triangle);
    return inst;
}

Instance Instance::from_full_matrix(int n, const std::vector<double>& full) {
    require_size(n);
    if (full.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("full matrix size mismatch");
    std::vector<double> tri;
    tri.reserve(triangle_size(n));
    for (int u = 0; u < n; ++u) {
        if (full[static_cast<std::size_t>(u) * n + u] != 0.0)
            throw std::invalid_argument("diagonal must be zero");
        for (int v = u + 1; v < n; ++v) {
            const double c = full[static_cast<std::size_t>(u) * n + v];
            if (c != full[static_cast<std::size_t>(v) * n + u])
                throw std::invalid_argument("matrix must be symmetric");
            tri.push_back(c);
        }
    }
    return explicit_matrix(n, std::move(tri));
}

Instance Instance::from_points(InstanceKind kind, std::vector<Point> points,
                               int materialize_threshold) {
    if (kind == InstanceKind::ExplicitMatrix)
        throw std::invalid_argument("from_points needs a geometric kind");
    const int n = static_cast<int>(points.size());
    require_size(n);
    Instance inst;
    inst.n_ = n;
    inst.kind_ = kind;
    inst.points_ = std::move(points);
    if (n <= materialize_threshold) {
        inst.tri_.reserve(triangle_size(n));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                inst.tri_.push_back(inst.geometric_cost(u, v));
    }
    return inst;
}

Instance gen_uniform(int n, std::uint64_t seed) {
    require_size(n);
    Rng rng(seed);
    std::vector<double> tri(triangle_size(n));
    for (double& c : tri)
        c = rng.uniform01();
    return Instance::explicit_matrix(n, std::move(tri));
}

Instance gen_euclidean(int n, std::uint64_t seed, int materialize_threshold) {
    require_size(n);
    Rng rng(seed);
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (Point& p : pts) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return Instance::from_points(InstanceKind::Euclidean, std::move(pts), materialize_threshold);
}

CminTable cmin_table(const Instance& inst) {
    const int n = inst.n();
    CminTable table;
    table.values.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double c = inst.cost(u, v);
            if (c < table.values[u])
                table.values[u] = c;
            if (c < table.values[v])
                table.values[v] = c;
        }
    }
    return table;
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& line, const std::string& what) {
    throw std::runtime_error("tsplib parse error at line " + std::to_string(line_no) + " (\"" +
                             line + "\"): " + what);
}

} // namespace

Instance parse_tsplib(std::istream& in, int materialize_threshold) {
    int dimension = -1;
    InstanceKind kind = InstanceKind::ExplicitMatrix;
    bool have_kind = false;

    std::string line;
    int line_no = 0;
    bool in_coords = false;
    std::vector<Point> pts;
    std::vector<bool> seen;
    int coords_read = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (!in_coords) {
            const std::size_t colon = t.find(':');
            const std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
            const std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
            if (key == "DIMENSION") {
                try {
                    dimension = std::stoi(value);
                } catch (const std::exception&) {
                    parse_fail(line_no, line, "bad DIMENSION value");
                }
                if (dimension < 4)
                    parse_fail(line_no, line, "DIMENSION must be at least 4");
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (value == "EUC_2D")
                    kind = InstanceKind::TsplibEuc2d;
                else if (value == "CEIL_2D")
                    kind = InstanceKind::TsplibCeil2d;
                else
                    parse_fail(line_no, line, "unsupported EDGE_WEIGHT_TYPE " + value);
                have_kind = true;
            } else if (key == "NODE_COORD_SECTION") {
                if (dimension < 0)
                    parse_fail(line_no, line, "NODE_COORD_SECTION before DIMENSION");
                if (!have_kind)
                    parse_fail(line_no, line, "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
                pts.assign(static_cast<std::size_t>(dimension), Point{});
                seen.assign(static_cast<std::size_t>(dimension), false);
                in_coords = true;
            }
            // NAME, TYPE, COMMENT and other header keys are ignored.
            continue;
        }
        if (t == "EOF")
            break;
        std::istringstream iss(t);
        int id = 0;
        double x = 0.0, y = 0.0;
        if (!(iss >> id >> x >> y))
            parse_fail(line_no, line, "malformed coordinate line");
        if (id < 1 || id > dimension)
            parse_fail(line_no, line, "node index out of range");
        if (seen[static_cast<std::size_t>(id - 1)])
            parse_fail(line_no, line, "duplicate node index");
        seen[static_cast<std::size_t>(id - 1)] = true;
        pts[static_cast<std::size_t>(id - 1)] = Point{x, y};
        ++coords_read;
    }

    if (!in_coords)
        throw std::runtime_error("tsplib parse error: missing NODE_COORD_SECTION");
    if (coords_read != dimension)
        throw std::runtime_error("tsplib parse error: expected " + std::to_string(dimension) +
                                 " coordinates, got " + std::to_string(coords_read));
    return Instance::from_points(kind, std::move(pts), materialize_threshold);
}

Instance parse_tsplib_file(const std::string& path, int materialize_threshold) {
    std::ifstream in(path);
    if (!in.is_open())
        throw std::runtime_error("cannot open tsplib file: " + path);
    return parse_tsplib(in, materialize_threshold);
}

void write_snapshot_csv(const Instance& inst, std::ostream& out) {
    out << "u,v,cost\n";
    char buf[32];
    for (int u = 0; u < inst.n(); ++u) {
        for (int v = u + 1; v < inst.n(); ++v) {
            std::snprintf(buf, sizeof(buf), "%.17g", inst.cost(u, v));
            out << (u + 1) << ',' << (v + 1) << ',' << buf << '\n';
        }
    }
}

Instance read_snapshot_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "u,v,cost")
        throw std::runtime_error("snapshot csv: missing u,v,cost header");
    struct Triplet {
        int u, v;
        double c;
    };
    std::vector<Triplet> rows;
    int max_node = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        Triplet t{};
        char comma1 = 0, comma2 = 0;
        std::istringstream iss(line);
        if (!(iss >> t.u >> comma1 >> t.v >> comma2 >> t.c) || comma1 != ',' || comma2 != ',')
            throw std::runtime_error("snapshot csv: malformed row at line " +
                                     std::to_string(line_no));
        if (t.u < 1 || t.v <= t.u || t.c < 0.0)
            throw std::runtime_error("snapshot csv: invalid triplet at line " +
                                     std::to_string(line_no));
        max_node = std::max(max_node, t.v);
        rows.push_back(t);
    }
    const int n = max_node;
    require_size(n);
    const std::size_t expect = triangle_size(n);
    if (rows.size() != expect)
        throw std::runtime_error("snapshot csv: expected " + std::to_string(expect) +
                                 " rows for n=" + std::to_string(n) + ", got " +
                                 std::to_string(rows.size()));
    const double unset = -1.0;
    std::vector<double> tri(expect, unset);
    for (const Triplet& t : rows) {
        const std::size_t u = static_cast<std::size_t>(t.u - 1);
        const std::size_t idx =
            u * static_cast<std::size_t>(n - 1) - u * (u - 1) / 2 + static_cast<std::size_t>(t.v - t.u - 1);
        if (tri[idx] != unset)
            throw std::runtime_error("snapshot csv: duplicate pair " + std::to_string(t.u) + "," +
                                     std::to_string(t.v));
        tri[idx] = t.c;
    }
    for (double c : tri)
        if (c == unset)
            throw std::runtime_error("snapshot csv: missing pairs");
    return Instance::explicit_matrix(n, std::move(tri));
}

} // namespace twopt
