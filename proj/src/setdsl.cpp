#include "coarseprox/setdsl.hpp"

#include <fstream>
#include <sstream>

namespace coarseprox {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Cursor(const std::string& text) : s(text) {}

    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }
    char get() {
        const char c = s[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    bool try_char(char c) {
        skip_ws();
        if (peek() == c) {
            get();
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    std::string ident() {
        skip_ws();
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                          peek() == '-')) {
            out += get();
        }
        if (out.empty()) fail("expected identifier");
        return out;
    }
    i64 integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        i64 v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > (i64{1} << 50)) fail("integer literal too large");
        }
        return neg ? -v : v;
    }
    // a or a/2, returned in halves
    i64 rational_halves() {
        const i64 a = integer();
        skip_ws();
        if (peek() == '/') {
            get();
            const i64 d = integer();
            if (d != 2) fail("only halves are supported in coordinates");
            return a;
        }
        return 2 * a;
    }
};

// --- polynomial expressions ---

Poly parse_poly_sum(Cursor& c, const std::array<std::string, 3>& vars);

int var_index(const std::string& name, const std::array<std::string, 3>& vars) {
    for (int i = 0; i < 3; ++i)
        if (!vars[i].empty() && vars[i] == name) return i;
    return -1;
}

Poly parse_poly_atom(Cursor& c, const std::array<std::string, 3>& vars) {
    c.skip_ws();
    Poly base;
    if (c.peek() == '(') {
        c.get();
        base = parse_poly_sum(c, vars);
        c.expect(')');
    } else if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        base = Poly(c.integer());
        // implicit multiplication: 2n, 3n^2, 2(n+1)
        c.skip_ws();
        if (std::isalpha(static_cast<unsigned char>(c.peek())) || c.peek() == '(') {
            return base * parse_poly_atom(c, vars);
        }
        return base;
    } else if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        std::string name;
        while (!c.eof() && std::isalnum(static_cast<unsigned char>(c.peek()))) name += c.get();
        const int vi = var_index(name, vars);
        if (vi < 0) c.fail("unknown variable '" + name + "'");
        base = Poly::variable(vi);
    } else {
        c.fail("expected polynomial term");
    }
    c.skip_ws();
    if (c.peek() == '^') {
        c.get();
        const i64 e = c.integer();
        if (e < 0 || e > 12) c.fail("exponent out of range");
        base = base.pow(static_cast<int>(e));
    }
    return base;
}

Poly parse_poly_product(Cursor& c, const std::array<std::string, 3>& vars) {
    Poly p = parse_poly_atom(c, vars);
    for (;;) {
        c.skip_ws();
        if (c.peek() == '*') {
            c.get();
            p = p * parse_poly_atom(c, vars);
        } else if (std::isalpha(static_cast<unsigned char>(c.peek())) || c.peek() == '(') {
            p = p * parse_poly_atom(c, vars);
        } else {
            return p;
        }
    }
}

Poly parse_poly_sum(Cursor& c, const std::array<std::string, 3>& vars) {
    c.skip_ws();
    bool neg = false;
    if (c.peek() == '-') {
        c.get();
        neg = true;
    } else if (c.peek() == '+') {
        c.get();
    }
    Poly p = parse_poly_product(c, vars);
    if (neg) p = Poly(0) - p;
    for (;;) {
        c.skip_ws();
        if (c.peek() == '+') {
            c.get();
            p = p + parse_poly_product(c, vars);
        } else if (c.peek() == '-') {
            c.get();
            p = p - parse_poly_product(c, vars);
        } else {
            return p;
        }
    }
}

// --- vectors / points ---

Point parse_vector(Cursor& c, int dim) {
    c.skip_ws();
    Point p{dim, {0, 0, 0}};
    if (dim == 1) {
        if (c.peek() == '(') {
            c.get();
            p.h[0] = c.rational_halves();
            c.expect(')');
        } else {
            p.h[0] = c.rational_halves();
        }
        return p;
    }
    c.expect('(');
    for (int i = 0; i < dim; ++i) {
        if (i) c.expect(',');
        p.h[i] = c.rational_halves();
    }
    c.expect(')');
    return p;
}

// --- set expressions ---

struct SetContext {
    const MetricModel& model;
    const std::vector<std::pair<std::string, TameSet>>* named = nullptr;
    const TameSet* universe = nullptr;
};

TameSet parse_set(Cursor& c, const SetContext& ctx);

std::vector<Point> parse_point_list(Cursor& c, const SetContext& ctx) {
    std::vector<Point> pts;
    c.skip_ws();
    while (c.peek() != ')') {
        if (!pts.empty()) c.expect(',');
        pts.push_back(parse_vector(c, ctx.model.dim()));
        c.skip_ws();
    }
    return pts;
}

TameSet parse_set(Cursor& c, const SetContext& ctx) {
    c.skip_ws();
    const int sl = c.line, sc = c.col;
    std::string head = c.ident();
    const auto vars = std::array<std::string, 3>{"n", "", ""};
    try {
        if (head == "seq") {
            c.expect('(');
            Poly p = parse_poly_sum(c, vars);
            c.expect(')');
            return make_seq(ctx.model, p);
        }
        if (head == "curve") {
            c.expect('(');
            std::vector<Poly> coords;
            coords.push_back(parse_poly_sum(c, vars));
            while (c.try_char(',')) coords.push_back(parse_poly_sum(c, vars));
            c.expect(')');
            return make_curve(ctx.model, coords);
        }
        if (head == "ray") {
            c.expect('(');
            Point dir{ctx.model.dim(), {0, 0, 0}}, base{ctx.model.dim(), {0, 0, 0}};
            bool have_dir = false;
            for (;;) {
                std::string key = c.ident();
                c.expect('=');
                if (key == "dir") {
                    dir = parse_vector(c, ctx.model.dim());
                    have_dir = true;
                } else if (key == "base") {
                    base = parse_vector(c, ctx.model.dim());
                } else {
                    c.fail("unknown ray argument '" + key + "'");
                }
                if (!c.try_char(',')) break;
            }
            c.expect(')');
            if (!have_dir) c.fail("ray needs dir=");
            return make_ray(ctx.model, dir, base);
        }
        if (head == "graph_abs") return make_graph_abs(ctx.model);
        if (head == "quadrant1") return make_quadrant1(ctx.model);
        if (head == "lattice") return make_lattice_all(ctx.model);
        if (head == "points") {
            c.expect('(');
            auto pts = parse_point_list(c, ctx);
            c.expect(')');
            return make_points(ctx.model, pts);
        }
        if (head == "union") {
            c.expect('(');
            std::vector<TameSet> parts;
            parts.push_back(parse_set(c, ctx));
            while (c.try_char(',')) parts.push_back(parse_set(c, ctx));
            c.expect(')');
            return make_union(ctx.model, std::move(parts));
        }
        if (head == "shift") {
            c.expect('(');
            TameSet inner = parse_set(c, ctx);
            c.expect(',');
            Point v = parse_vector(c, ctx.model.dim());
            c.expect(')');
            return make_shift(ctx.model, inner, v);
        }
        if (head == "minus_ball") {
            c.expect('(');
            TameSet inner = parse_set(c, ctx);
            c.expect(',');
            i64 r = c.integer();
            c.expect(')');
            if (r < 0) c.fail("minus_ball radius must be nonnegative");
            return make_minus_ball(ctx.model, inner, r, ctx.model.basepoint);
        }
        if (head == "add_points") {
            c.expect('(');
            TameSet inner = parse_set(c, ctx);
            c.expect(',');
            auto pts = parse_point_list(c, ctx);
            c.expect(')');
            return make_add_points(ctx.model, inner, pts);
        }
        if (head == "remove_points") {
            c.expect('(');
            TameSet inner = parse_set(c, ctx);
            c.expect(',');
            auto pts = parse_point_list(c, ctx);
            c.expect(')');
            return make_remove_points(ctx.model, inner, pts);
        }
        if (head == "complement") {
            c.expect('(');
            TameSet inner = parse_set(c, ctx);
            c.expect(')');
            if (!ctx.universe) c.fail("complement needs a declared universe");
            return make_complement(ctx.model, *ctx.universe, inner);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), sl, sc);
    }
    // name reference
    if (ctx.named) {
        for (const auto& [name, s] : *ctx.named)
            if (name == head) return s;
    }
    throw ParseError("unknown primitive or set name '" + head + "'", sl, sc);
}

std::array<std::string, 3> map_vars(int dim) {
    if (dim == 1) return {"x", "", ""};
    if (dim == 2) return {"x", "y", ""};
    return {"x", "y", "z"};
}

PointMap parse_map(Cursor& c, const MetricModel& domain) {
    const auto vars = map_vars(domain.dim());
    c.skip_ws();
    // left side: x or (x,y[,z])
    if (c.peek() == '(') {
        c.get();
        for (int i = 0; i < domain.dim(); ++i) {
            if (i) c.expect(',');
            std::string v = c.ident();
            if (v != vars[i]) c.fail("domain variables must be named " + vars[0] + ",y,z in order");
        }
        c.expect(')');
    } else {
        std::string v = c.ident();
        if (v != vars[0]) c.fail("1-dimensional maps use variable x");
        if (domain.dim() != 1) c.fail("domain arity mismatch");
    }
    c.skip_ws();
    if (!(c.try_char('-') && c.try_char('>'))) c.fail("expected ->");
    c.skip_ws();
    std::vector<Poly> coords;
    if (c.peek() == '(') {
        c.get();
        coords.push_back(parse_poly_sum(c, vars));
        while (c.try_char(',')) coords.push_back(parse_poly_sum(c, vars));
        c.expect(')');
    } else {
        coords.push_back(parse_poly_sum(c, vars));
    }
    // optional codomain:  into <model-kind>
    MetricModel codomain = domain;
    c.skip_ws();
    if (!c.eof() && std::isalpha(static_cast<unsigned char>(c.peek()))) {
        const std::string kw = c.ident();
        if (kw != "into") c.fail("expected 'into' or end of map");
        const std::string kind = c.ident();
        auto mk = model_kind_from_name(kind);
        if (!mk) c.fail("unknown model kind '" + kind + "'");
        codomain = MetricModel(*mk);
    }
    if (static_cast<int>(coords.size()) != codomain.dim())
        c.fail("map arity does not match codomain dimension");
    PointMap m;
    m.domain = domain;
    m.codomain = codomain;
    m.coords = std::move(coords);
    return m;
}

}  // namespace

const TameSet* Catalog::find_set(const std::string& name) const {
    for (const auto& [n, s] : sets)
        if (n == name) return &s;
    return nullptr;
}
const PointMap* Catalog::find_map(const std::string& name) const {
    for (const auto& [n, m] : maps)
        if (n == name) return &m;
    return nullptr;
}
const TameSet& Catalog::require_set(const std::string& name) const {
    const TameSet* s = find_set(name);
    if (!s) throw std::invalid_argument("unknown set '" + name + "'");
    return *s;
}
const PointMap& Catalog::require_map(const std::string& name) const {
    const PointMap* m = find_map(name);
    if (!m) throw std::invalid_argument("unknown map '" + name + "'");
    return *m;
}

std::string truth_kind_name(GroundTruth::Kind k) {
    switch (k) {
        case GroundTruth::Kind::Close: return "close";
        case GroundTruth::Kind::Disjoint: return "disjoint";
        case GroundTruth::Kind::Phi: return "phi";
        case GroundTruth::Kind::NotPhi: return "not-phi";
        case GroundTruth::Kind::Bounded: return "bounded";
        case GroundTruth::Kind::Unbounded: return "unbounded";
    }
    return "?";
}

Catalog parse_catalog_text(const std::string& text) {
    Catalog cat;
    bool have_model = false;
    bool universe_default = true;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        // trim
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);

        Cursor c(line);
        c.line = lineno;
        std::string kw = c.ident();
        if (kw == "model") {
            const std::string kind = c.ident();
            auto mk = model_kind_from_name(kind);
            if (!mk) throw ParseError("unknown model kind '" + kind + "'", lineno, 1);
            cat.model = MetricModel(*mk);
            cat.universe = universe_of_model(cat.model);
            have_model = true;
            continue;
        }
        if (!have_model) throw ParseError("the model declaration must come first", lineno, 1);
        if (kw == "basepoint") {
            Point p = parse_vector(c, cat.model.dim());
            cat.model = MetricModel(cat.model.kind, p);
            if (universe_default) cat.universe = universe_of_model(cat.model);
            continue;
        }
        if (kw == "set") {
            std::string name = c.ident();
            if (cat.find_set(name)) throw ParseError("duplicate set name '" + name + "'", lineno, 1);
            c.expect('=');
            SetContext ctx{cat.model, &cat.sets, &cat.universe};
            TameSet s = parse_set(c, ctx);
            c.skip_ws();
            if (!c.eof()) c.fail("trailing input after set expression");
            cat.sets.push_back({std::move(name), std::move(s)});
            continue;
        }
        if (kw == "universe") {
            c.skip_ws();
            SetContext ctx{cat.model, &cat.sets, &cat.universe};
            const size_t save = c.pos;
            std::string maybe_name;
            try {
                maybe_name = c.ident();
            } catch (const ParseError&) {
            }
            if (!maybe_name.empty() && cat.find_set(maybe_name) && (c.skip_ws(), c.eof())) {
                cat.universe = *cat.find_set(maybe_name);
                cat.universe_name = maybe_name;
            } else {
                c.pos = save;
                cat.universe = parse_set(c, ctx);
                cat.universe_name.clear();
            }
            universe_default = false;
            cat.universe_declared = true;
            continue;
        }
        if (kw == "map") {
            std::string name = c.ident();
            if (cat.find_map(name)) throw ParseError("duplicate map name '" + name + "'", lineno, 1);
            c.expect('=');
            PointMap m = parse_map(c, cat.model);
            cat.maps.push_back({std::move(name), std::move(m)});
            continue;
        }
        if (kw == "truth") {
            std::string kind = c.ident();
            GroundTruth t;
            if (kind == "close")
                t.kind = GroundTruth::Kind::Close;
            else if (kind == "disjoint")
                t.kind = GroundTruth::Kind::Disjoint;
            else if (kind == "phi")
                t.kind = GroundTruth::Kind::Phi;
            else if (kind == "not-phi")
                t.kind = GroundTruth::Kind::NotPhi;
            else if (kind == "bounded")
                t.kind = GroundTruth::Kind::Bounded;
            else if (kind == "unbounded")
                t.kind = GroundTruth::Kind::Unbounded;
            else
                throw ParseError("unknown truth kind '" + kind + "'", lineno, 1);
            t.a = c.ident();
            if (!cat.find_set(t.a))
                throw ParseError("truth references undefined set '" + t.a + "'", lineno, 1);
            if (t.kind != GroundTruth::Kind::Bounded && t.kind != GroundTruth::Kind::Unbounded) {
                t.b = c.ident();
                if (!cat.find_set(t.b))
                    throw ParseError("truth references undefined set '" + t.b + "'", lineno, 1);
            }
            if (t.kind == GroundTruth::Kind::Close) t.eps = c.integer();
            cat.truths.push_back(std::move(t));
            continue;
        }
        throw ParseError("unknown declaration '" + kw + "'", lineno, 1);
    }
    if (!have_model) throw ParseError("missing model declaration", 1, 1);
    return cat;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog_text(ss.str());
}

TameSet parse_set_expr(const std::string& text, const MetricModel& model) {
    Cursor c(text);
    TameSet uni = universe_of_model(model);
    SetContext ctx{model, nullptr, &uni};
    TameSet s = parse_set(c, ctx);
    c.skip_ws();
    if (!c.eof()) c.fail("trailing input after set expression");
    return s;
}

Poly parse_poly(const std::string& text, const std::array<std::string, 3>& vars) {
    Cursor c(text);
    Poly p = parse_poly_sum(c, vars);
    c.skip_ws();
    if (!c.eof()) c.fail("trailing input after polynomial");
    return p;
}

PointMap parse_map_expr(const std::string& text, const MetricModel& domain) {
    Cursor c(text);
    PointMap m = parse_map(c, domain);
    c.skip_ws();
    if (!c.eof()) c.fail("trailing input after map");
    return m;
}

std::string print_catalog(const Catalog& c) {
    std::ostringstream os;
    os << "model " << c.model.kind_name() << "\n";
    if (sq_norm(c.model.basepoint) != 0) os << "basepoint " << c.model.basepoint.str() << "\n";
    for (const auto& [name, s] : c.sets) os << "set " << name << " = " << s.describe() << "\n";
    if (c.universe_declared) {
        os << "universe " << (c.universe_name.empty() ? c.universe.describe() : c.universe_name)
           << "\n";
    }
    for (const auto& [name, m] : c.maps) {
        os << "map " << name << " = " << m.str();
        if (m.codomain.kind != m.domain.kind) os << " into " << m.codomain.kind_name();
        os << "\n";
    }
    for (const auto& t : c.truths) {
        os << "truth " << truth_kind_name(t.kind) << " " << t.a;
        if (!t.b.empty()) os << " " << t.b;
        if (t.kind == GroundTruth::Kind::Close) os << " " << t.eps;
        os << "\n";
    }
    return os.str();
}

}  // namespace coarseprox
