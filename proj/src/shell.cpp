#include "cat2/shell.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace cat2::shell {

using nlohmann::json;

// ---------------------------------------------------------------------------
// free presentation closure by relation rewriting

namespace {

struct Rel {
    std::vector<Id> lhs, rhs;  // rewrite lhs -> rhs; paths in diagram order
};

Id join_path(const std::vector<Id>& p) {
    Id s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ".";
        s += p[i];
    }
    return s;
}

Id path_id(const std::vector<Id>& p, const Id& obj) {
    return p.empty() ? "id:" + obj : join_path(p);
}

std::vector<Id> rewrite(std::vector<Id> p, const std::vector<Rel>& rels) {
    std::size_t steps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        if (++steps > 100000) throw ClosureDiverged("relation rewriting did not terminate");
        for (const Rel& r : rels) {
            if (r.lhs.size() > p.size()) continue;
            for (std::size_t i = 0; i + r.lhs.size() <= p.size(); ++i) {
                if (!std::equal(r.lhs.begin(), r.lhs.end(), p.begin() + i)) continue;
                std::vector<Id> q(p.begin(), p.begin() + i);
                q.insert(q.end(), r.rhs.begin(), r.rhs.end());
                q.insert(q.end(), p.begin() + i + r.lhs.size(), p.end());
                p = std::move(q);
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    return p;
}

struct Pres {
    std::vector<Id> objects;
    std::vector<Morphism> arrows;  // generators with endpoints
    std::vector<Rel> rels;         // oriented at parse time
};

FiniteCategory close_presentation(const Pres& pr, const Limits& limits, int line) {
    FiniteCategory c;
    struct MData {
        std::vector<Id> path;
        Id src, tgt;
    };
    std::map<Id, MData> table;
    for (const Id& o : pr.objects) {
        c.add_object(o);
        Id i = "id:" + o;
        c.add_morphism(i, o, o);
        c.identity[o] = i;
        table[i] = {{}, o, o};
    }
    std::map<Id, std::pair<Id, Id>> gend;
    for (const Morphism& m : pr.arrows) gend[m.id] = {m.src, m.tgt};
    auto add_path = [&](const std::vector<Id>& p) -> bool {
        if (p.empty()) return false;
        Id id = join_path(p);
        if (table.count(id)) return false;
        Id src = gend.at(p.front()).first;
        Id tgt = gend.at(p.back()).second;
        c.add_morphism(id, src, tgt);
        table[id] = {p, src, tgt};
        if (table.size() > limits.max_morphisms)
            throw ClosureDiverged("composition closure exceeds the morphism cap");
        return true;
    };
    for (const Morphism& m : pr.arrows) add_path(rewrite({m.id}, pr.rels));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Id> snap;
        for (const auto& [id, d] : table) snap.push_back(id);
        for (const Id& u : snap)
            for (const Id& v : snap) {
                if (table.at(u).tgt != table.at(v).src) continue;
                std::vector<Id> p = table.at(u).path;
                const std::vector<Id>& q = table.at(v).path;
                p.insert(p.end(), q.begin(), q.end());
                if (add_path(rewrite(std::move(p), pr.rels))) grew = true;
            }
    }
    for (const auto& [u, du] : table)
        for (const auto& [v, dv] : table) {
            if (du.tgt != dv.src) continue;
            std::vector<Id> p = du.path;
            p.insert(p.end(), dv.path.begin(), dv.path.end());
            c.composition[{v, u}] = path_id(rewrite(std::move(p), pr.rels), du.src);
        }
    c.normalize();
    ValidationReport r = cat2::kernel::validate(c);
    if (!r.pass)
        throw ParseError(line, "presentation closure is not a category (" +
                                   r.violations.front().law + ")");
    return c;
}

struct CellDecl {
    Id id, src1, tgt1;  // endpoints are normalized 1-cell ids
};

Finite2Category close_two_presentation(const Pres& pr, const std::vector<CellDecl>& cells,
                                       const Limits& limits, int line) {
    FiniteCategory ones = close_presentation(pr, limits, line);
    Finite2Category k;
    k.objects = pr.objects;
    for (const Id& o : pr.objects) k.unit[o] = ones.id_on(o);

    // every 2-cell generator is kept in sandwich form l ∘ m ∘ r so whiskers
    // by composite 1-cells merge instead of piling up
    struct Sand {
        Id l, m, r, id, src1, tgt1, a, b;
    };
    std::vector<Sand> sands;
    std::map<std::array<Id, 3>, std::size_t> sand_ix;
    for (const CellDecl& cd : cells) {
        const Morphism& sm = ones.mor(cd.src1);
        for (const Morphism& lm : ones.morphisms) {
            if (lm.src != sm.tgt) continue;
            for (const Morphism& rm : ones.morphisms) {
                if (rm.tgt != sm.src) continue;
                Sand s;
                s.l = lm.id;
                s.m = cd.id;
                s.r = rm.id;
                s.src1 = ones.compose(lm.id, ones.compose(cd.src1, rm.id));
                s.tgt1 = ones.compose(lm.id, ones.compose(cd.tgt1, rm.id));
                s.a = rm.src;
                s.b = lm.tgt;
                s.id = (ones.is_identity(lm.id) && ones.is_identity(rm.id))
                           ? cd.id
                           : lm.id + "*" + cd.id + "*" + rm.id;
                sand_ix[{s.l, s.m, s.r}] = sands.size();
                sands.push_back(std::move(s));
                if (sands.size() > limits.max_morphisms)
                    throw ClosureDiverged("2-cell whisker closure exceeds the cap");
            }
        }
    }
    struct Chain {
        std::vector<std::size_t> sx;
        Id src1, tgt1;
    };
    std::map<std::pair<Id, Id>, std::map<Id, Chain>> chains;
    std::size_t total2 = 0;
    std::vector<std::tuple<Id, Id, Id>> work;  // (home a, home b, chain id)
    auto chain_id = [&](const std::vector<std::size_t>& sx) {
        Id s;
        for (std::size_t i = 0; i < sx.size(); ++i) {
            if (i) s += ".";
            s += sands[sx[i]].id;
        }
        return s;
    };
    auto add_chain = [&](const Id& a, const Id& b, Chain ch) {
        Id id = chain_id(ch.sx);
        auto& home = chains[{a, b}];
        if (home.count(id)) return;
        home.emplace(id, std::move(ch));
        work.push_back({a, b, id});
        if (++total2 > limits.max_morphisms)
            throw ClosureDiverged("2-cell composition closure exceeds the cap");
    };
    for (std::size_t i = 0; i < sands.size(); ++i)
        add_chain(sands[i].a, sands[i].b, Chain{{i}, sands[i].src1, sands[i].tgt1});
    while (!work.empty()) {
        auto [a, b, id] = work.back();
        work.pop_back();
        Chain ch = chains.at({a, b}).at(id);
        for (std::size_t i = 0; i < sands.size(); ++i) {
            if (sands[i].a != a || sands[i].b != b || sands[i].src1 != ch.tgt1) continue;
            Chain ext = ch;
            ext.sx.push_back(i);
            ext.tgt1 = sands[i].tgt1;
            add_chain(a, b, std::move(ext));
        }
    }

    for (const Id& a : k.objects)
        for (const Id& b : k.objects) {
            FiniteCategory h;
            for (const Id& f : ones.hom(a, b)) {
                h.add_object(f);
                Id i2 = "id:" + f;
                h.add_morphism(i2, f, f);
                h.identity[f] = i2;
            }
            auto it = chains.find({a, b});
            if (it != chains.end())
                for (const auto& [cid, ch] : it->second) h.add_morphism(cid, ch.src1, ch.tgt1);
            for (const Morphism& m1 : h.morphisms)
                for (const Morphism& m2 : h.morphisms) {
                    if (m1.tgt != m2.src) continue;
                    Id res;
                    if (h.is_identity(m1.id))
                        res = m2.id;
                    else if (h.is_identity(m2.id))
                        res = m1.id;
                    else
                        res = m1.id + "." + m2.id;
                    if (!h.is_identity(m1.id) && !h.is_identity(m2.id) &&
                        !it->second.count(res))
                        throw ClosureDiverged("vertical composite escaped the closure");
                    h.composition[{m2.id, m1.id}] = res;
                }
            h.normalize();
            k.hom[{a, b}] = std::move(h);
        }
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c0 : k.objects)
                for (const Id& f : ones.hom(a, b))
                    for (const Id& g : ones.hom(b, c0)) k.hcomp1[{g, f}] = ones.compose(g, f);
    auto chain_of = [&](const Id& a, const Id& b, const FiniteCategory& h,
                        const Id& cell) -> std::vector<std::size_t> {
        if (h.is_identity(cell)) return {};
        return chains.at({a, b}).at(cell).sx;
    };
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c0 : k.objects) {
                const FiniteCategory& hab = k.hom_at(a, b);
                const FiniteCategory& hbc = k.hom_at(b, c0);
                for (const Morphism& e : hab.morphisms)
                    for (const Morphism& d : hbc.morphisms) {
                        std::vector<Id> rs;
                        for (std::size_t sx : chain_of(a, b, hab, e.id)) {
                            const Sand& s = sands[sx];
                            rs.push_back(sands[sand_ix.at({ones.compose(d.src, s.l), s.m, s.r})].id);
                        }
                        for (std::size_t sx : chain_of(b, c0, hbc, d.id)) {
                            const Sand& s = sands[sx];
                            rs.push_back(sands[sand_ix.at({s.l, s.m, ones.compose(s.r, e.tgt)})].id);
                        }
                        Id res;
                        if (rs.empty()) {
                            res = "id:" + ones.compose(d.src, e.src);
                        } else {
                            res = join_path(rs);
                            if (!chains.at({a, c0}).count(res))
                                throw ClosureDiverged("horizontal composite escaped the closure");
                        }
                        k.hcomp2[{d.id, e.id}] = res;
                    }
            }
    k.normalize();
    ValidationReport r = cat2::kernel::validate(k);
    if (!r.pass)
        throw ParseError(line, "presentation closure is not a 2-category (" +
                                   r.violations.front().law + ")");
    return k;
}

// ---------------------------------------------------------------------------
// document lookups

template <typename T>
const T* find_named(const std::vector<std::pair<std::string, T>>& v, const std::string& n) {
    for (const auto& [name, x] : v)
        if (name == n) return &x;
    return nullptr;
}

template <typename T>
const std::string& name_of(const std::vector<std::pair<std::string, T>>& v, const T& x,
                           const char* kind) {
    for (const auto& [name, y] : v)
        if (y == x) return name;
    throw DanglingReference(std::string("serialize: unnamed ") + kind);
}

const FiniteCategory& need_category(const Document& d, const std::string& n, int line = 0) {
    const FiniteCategory* c = find_named(d.categories, n);
    if (!c) throw ParseError(line, "unknown category: " + n);
    return *c;
}
const Finite2Category& need_twocat(const Document& d, const std::string& n, int line = 0) {
    const Finite2Category* c = find_named(d.two_categories, n);
    if (!c) throw ParseError(line, "unknown 2-category: " + n);
    return *c;
}
const CatValued2Functor& need_diagram(const Document& d, const std::string& n, int line = 0) {
    const CatValued2Functor* c = find_named(d.diagrams, n);
    if (!c) throw ParseError(line, "unknown diagram: " + n);
    return *c;
}

Flavor flavor_of(const std::string& s, int line = 0) {
    for (Flavor f : {Flavor::Strict, Flavor::Pseudo, Flavor::Lax, Flavor::Oplax,
                     Flavor::MarkedLax, Flavor::MarkedOplax, Flavor::Sigma})
        if (flavor_name(f) == s) return f;
    throw ParseError(line, "unknown flavor: " + s);
}

void check_unique_names(const Document& d) {
    std::set<std::string> seen;
    auto add = [&](const std::string& n) {
        if (!seen.insert(n).second) throw ParseError(0, "duplicate name: " + n);
    };
    for (const auto& [n, x] : d.categories) add(n);
    for (const auto& [n, x] : d.two_categories) add(n);
    for (const auto& [n, x] : d.diagrams) add(n);
    for (const auto& [n, x] : d.transformations) add(n);
    for (const auto& [n, x] : d.markings) add(n);
}

template <typename T>
void sort_decls(std::vector<std::pair<std::string, T>>& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

void canonicalize(Document& d) {
    sort_decls(d.categories);
    sort_decls(d.two_categories);
    sort_decls(d.diagrams);
    sort_decls(d.transformations);
    sort_decls(d.markings);
    check_unique_names(d);
}

// ---------------------------------------------------------------------------
// JSON interchange

json cat_to_json(const FiniteCategory& c) {
    json j;
    j["objects"] = c.objects;
    json ms = json::array();
    for (const Morphism& m : c.morphisms) ms.push_back({m.id, m.src, m.tgt});
    j["morphisms"] = ms;
    j["identity"] = c.identity;
    json comp = json::array();
    for (const auto& [key, r] : c.composition) comp.push_back({key.first, key.second, r});
    j["composition"] = comp;
    return j;
}

FiniteCategory cat_from_json(const json& j) {
    FiniteCategory c;
    for (const auto& o : j.at("objects")) c.objects.push_back(o.get<Id>());
    for (const auto& m : j.at("morphisms"))
        c.morphisms.push_back({m.at(0).get<Id>(), m.at(1).get<Id>(), m.at(2).get<Id>()});
    for (const auto& [k, v] : j.at("identity").items()) c.identity[k] = v.get<Id>();
    for (const auto& e : j.at("composition"))
        c.composition[{e.at(0).get<Id>(), e.at(1).get<Id>()}] = e.at(2).get<Id>();
    c.normalize();
    return c;
}

json twocat_to_json(const Finite2Category& k) {
    json j;
    j["objects"] = k.objects;
    json homs = json::array();
    for (const auto& [key, h] : k.hom) {
        json e = cat_to_json(h);
        e["src"] = key.first;
        e["tgt"] = key.second;
        homs.push_back(e);
    }
    j["hom"] = homs;
    j["unit"] = k.unit;
    json h1 = json::array(), h2 = json::array();
    for (const auto& [key, r] : k.hcomp1) h1.push_back({key.first, key.second, r});
    for (const auto& [key, r] : k.hcomp2) h2.push_back({key.first, key.second, r});
    j["hcomp1"] = h1;
    j["hcomp2"] = h2;
    return j;
}

Finite2Category twocat_from_json(const json& j) {
    Finite2Category k;
    for (const auto& o : j.at("objects")) k.objects.push_back(o.get<Id>());
    for (const auto& e : j.at("hom"))
        k.hom[{e.at("src").get<Id>(), e.at("tgt").get<Id>()}] = cat_from_json(e);
    for (const auto& [key, v] : j.at("unit").items()) k.unit[key] = v.get<Id>();
    for (const auto& e : j.at("hcomp1"))
        k.hcomp1[{e.at(0).get<Id>(), e.at(1).get<Id>()}] = e.at(2).get<Id>();
    for (const auto& e : j.at("hcomp2"))
        k.hcomp2[{e.at(0).get<Id>(), e.at(1).get<Id>()}] = e.at(2).get<Id>();
    k.normalize();
    return k;
}

json functor_maps_to_json(const Functor& f) {
    return {{"on_obj", f.on_obj}, {"on_mor", f.on_mor}};
}

Functor functor_from_json(const json& j, const FiniteCategory& src, const FiniteCategory& tgt) {
    Functor f;
    f.src = src;
    f.tgt = tgt;
    for (const auto& [k, v] : j.at("on_obj").items()) f.on_obj[k] = v.get<Id>();
    for (const auto& [k, v] : j.at("on_mor").items()) f.on_mor[k] = v.get<Id>();
    return f;
}

json diagram_to_json(const Document& d, const CatValued2Functor& f) {
    json j;
    j["base"] = name_of(d.two_categories, f.base, "2-category");
    json oo = json::object();
    for (const auto& [a, c] : f.on_obj) oo[a] = name_of(d.categories, c, "category");
    j["on_obj"] = oo;
    json o1 = json::object();
    for (const auto& [m, fn] : f.on1) o1[m] = functor_maps_to_json(fn);
    j["on1"] = o1;
    json o2 = json::object();
    for (const auto& [m, nt] : f.on2) o2[m] = nt.component;
    j["on2"] = o2;
    return j;
}

CatValued2Functor diagram_from_json(const Document& d, const json& j) {
    CatValued2Functor f;
    f.base = need_twocat(d, j.at("base").get<std::string>());
    for (const auto& [a, v] : j.at("on_obj").items())
        f.on_obj[a] = need_category(d, v.get<std::string>());
    for (const auto& [m, v] : j.at("on1").items()) {
        auto [a, b] = f.base.cell1_home(m);
        f.on1[m] = functor_from_json(v, f.obj(a), f.obj(b));
    }
    for (const auto& [m, v] : j.at("on2").items()) {
        auto [a, b] = f.base.cell2_home(m);
        NaturalTransformation nt;
        nt.src = f.cell1(f.base.hom_at(a, b).src(m));
        nt.tgt = f.cell1(f.base.hom_at(a, b).tgt(m));
        for (const auto& [x, mo] : v.items()) nt.component[x] = mo.get<Id>();
        f.on2[m] = std::move(nt);
    }
    return f;
}

json transformation_to_json(const Document& d, const Transformation& t) {
    json j;
    j["flavor"] = flavor_name(t.flavor);
    if (t.marking) j["marking"] = name_of(d.markings, *t.marking, "marking");
    j["src"] = name_of(d.diagrams, t.src, "diagram");
    j["tgt"] = name_of(d.diagrams, t.tgt, "diagram");
    json comp = json::object();
    for (const auto& [a, fn] : t.component) comp[a] = functor_maps_to_json(fn);
    j["component"] = comp;
    json str = json::object();
    for (const auto& [m, nt] : t.structure) str[m] = nt.component;
    j["structure"] = str;
    return j;
}

Transformation transformation_from_json(const Document& d, const json& j) {
    Transformation t;
    t.flavor = flavor_of(j.at("flavor").get<std::string>());
    if (j.contains("marking")) {
        const Marking* m = find_named(d.markings, j.at("marking").get<std::string>());
        if (!m) throw ParseError(0, "unknown marking: " + j.at("marking").get<std::string>());
        t.marking = *m;
    }
    t.src = need_diagram(d, j.at("src").get<std::string>());
    t.tgt = need_diagram(d, j.at("tgt").get<std::string>());
    for (const auto& [a, v] : j.at("component").items())
        t.component[a] = functor_from_json(v, t.src.obj(a), t.tgt.obj(a));
    bool oplax = flavor_is_oplax(t.flavor);
    for (const auto& [m, v] : j.at("structure").items()) {
        auto [a, b] = t.src.base.cell1_home(m);
        NaturalTransformation nt;
        if (oplax) {
            nt.src = compose_functors(t.at(b), t.src.cell1(m));
            nt.tgt = compose_functors(t.tgt.cell1(m), t.at(a));
        } else {
            nt.src = compose_functors(t.tgt.cell1(m), t.at(a));
            nt.tgt = compose_functors(t.at(b), t.src.cell1(m));
        }
        for (const auto& [x, mo] : v.items()) nt.component[x] = mo.get<Id>();
        t.structure[m] = std::move(nt);
    }
    return t;
}

json marking_to_json(const Document& d, const Marking& m) {
    json j;
    j["carrier"] = name_of(d.two_categories, m.carrier, "2-category");
    j["marked"] = m.marked;
    return j;
}

Marking marking_from_json(const Document& d, const json& j) {
    Marking m;
    m.carrier = need_twocat(d, j.at("carrier").get<std::string>());
    for (const auto& v : j.at("marked")) m.marked.insert(v.get<Id>());
    return m;
}

Document document_from_json(const json& j) {
    Document d;
    if (j.contains("categories"))
        for (const auto& e : j.at("categories"))
            d.categories.push_back({e.at("name").get<std::string>(), cat_from_json(e)});
    if (j.contains("two_categories"))
        for (const auto& e : j.at("two_categories"))
            d.two_categories.push_back({e.at("name").get<std::string>(), twocat_from_json(e)});
    if (j.contains("diagrams"))
        for (const auto& e : j.at("diagrams"))
            d.diagrams.push_back({e.at("name").get<std::string>(), diagram_from_json(d, e)});
    if (j.contains("markings"))
        for (const auto& e : j.at("markings"))
            d.markings.push_back({e.at("name").get<std::string>(), marking_from_json(d, e)});
    if (j.contains("transformations"))
        for (const auto& e : j.at("transformations"))
            d.transformations.push_back(
                {e.at("name").get<std::string>(), transformation_from_json(d, e)});
    if (j.contains("tasks"))
        for (const auto& e : j.at("tasks")) {
            TaskRecord t;
            t.op = e.at("op").get<std::string>();
            if (e.contains("args"))
                for (const auto& [k, v] : e.at("args").items()) t.args[k] = v.get<std::string>();
            if (e.contains("options"))
                for (const auto& [k, v] : e.at("options").items())
                    t.options[k] = v.get<std::string>();
            d.tasks.push_back(std::move(t));
        }
    canonicalize(d);
    return d;
}

// ---------------------------------------------------------------------------
// DSL

struct Token {
    std::string text;
    int line;
};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' ||
           c == '-';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({"->", line});
            i += 2;
        } else if (word_char(c)) {
            std::size_t b = i;
            while (i < text.size() && word_char(text[i]) &&
                   !(text[i] == '-' && i + 1 < text.size() && text[i + 1] == '>'))
                ++i;
            out.push_back({text.substr(b, i - b), line});
        } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({"=>", line});
            i += 2;
        } else if (std::string("{}();:=.,").find(c) != std::string::npos) {
            out.push_back({std::string(1, c), line});
            ++i;
        } else {
            throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

struct DslParser {
    std::vector<Token> toks;
    std::size_t pos = 0;
    Limits limits;
    Document doc;
    std::vector<std::pair<std::string, Functor>> functors;  // parse-time bindings

    int line() const { return pos < toks.size() ? toks[pos].line : (toks.empty() ? 1 : toks.back().line); }
    bool at(const std::string& s) const { return pos < toks.size() && toks[pos].text == s; }
    bool eat(const std::string& s) {
        if (!at(s)) return false;
        ++pos;
        return true;
    }
    void expect(const std::string& s) {
        if (!eat(s)) throw ParseError(line(), "expected '" + s + "'");
    }
    std::string word() {
        if (pos >= toks.size()) throw ParseError(line(), "unexpected end of input");
        const std::string& t = toks[pos].text;
        if (!word_char(t[0])) throw ParseError(line(), "expected a name, got '" + t + "'");
        ++pos;
        return t;
    }

    std::vector<Id> path() {
        std::vector<Id> p{word()};
        while (eat(".")) p.push_back(word());
        return p;
    }

    // paths are written "f.g" meaning f then g; endpoints checked against the
    // declared generators
    std::pair<Id, Id> path_ends(const std::vector<Id>& p,
                                const std::map<Id, std::pair<Id, Id>>& gend, int ln) {
        Id src, tgt;
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto it = gend.find(p[i]);
            if (it == gend.end()) throw ParseError(ln, "unknown arrow: " + p[i]);
            if (i == 0)
                src = it->second.first;
            else if (tgt != it->second.first)
                throw ParseError(ln, "path is not composable at " + p[i]);
            tgt = it->second.second;
        }
        return {src, tgt};
    }

    Pres pres_body(std::vector<CellDecl>* cells) {
        Pres pr;
        std::map<Id, std::pair<Id, Id>> gend;
        expect("{");
        while (!eat("}")) {
            int ln = line();
            std::string kw = word();
            expect(":");
            if (kw == "objects") {
                while (!at(";") && !at("}")) pr.objects.push_back(word());
            } else if (kw == "arrows") {
                do {
                    Id f = word();
                    expect(":");
                    Id a = word();
                    expect("->");
                    Id b = word();
                    bool okA = false, okB = false;
                    for (const Id& o : pr.objects) {
                        okA |= o == a;
                        okB |= o == b;
                    }
                    if (!okA) throw ParseError(ln, "arrow source not declared: " + a);
                    if (!okB) throw ParseError(ln, "arrow target not declared: " + b);
                    pr.arrows.push_back({f, a, b});
                    gend[f] = {a, b};
                } while (eat(","));
            } else if (kw == "relations") {
                do {
                    int rl = line();
                    std::vector<Id> l = at("id") ? (void(word()), std::vector<Id>{}) : path();
                    expect("=");
                    std::vector<Id> r = at("id") ? (void(word()), std::vector<Id>{}) : path();
                    if (!l.empty() && !r.empty()) {
                        if (path_ends(l, gend, rl) != path_ends(r, gend, rl))
                            throw ParseError(rl, "relation sides are not parallel");
                    } else if (l.empty() && r.empty()) {
                        continue;
                    } else {
                        auto e = path_ends(l.empty() ? r : l, gend, rl);
                        if (e.first != e.second)
                            throw ParseError(rl, "identity relation on a non-endo path");
                    }
                    // orient toward the shorter (then lexicographically
                    // smaller) side so rewriting terminates
                    bool swap = l.size() < r.size() ||
                                (l.size() == r.size() && join_path(l) < join_path(r));
                    if (swap) std::swap(l, r);
                    if (l != r) pr.rels.push_back({std::move(l), std::move(r)});
                } while (eat(","));
            } else if (kw == "cells") {
                if (!cells) throw ParseError(ln, "cells are only allowed in a twocategory");
                do {
                    Id m = word();
                    expect(":");
                    std::vector<Id> s = path();
                    expect("=>");
                    std::vector<Id> t = path();
                    if (path_ends(s, gend, ln) != path_ends(t, gend, ln))
                        throw ParseError(ln, "cell endpoints are not parallel");
                    CellDecl cd;
                    cd.id = m;
                    cd.src1 = join_path(s);
                    cd.tgt1 = join_path(t);
                    cells->push_back(std::move(cd));
                } while (eat(","));
            } else {
                throw ParseError(ln, "unknown section: " + kw);
            }
            eat(";");
        }
        return pr;
    }

    // after the 1-cell closure the declared cell endpoints are replaced by
    // their normal forms
    void normalize_cells(std::vector<CellDecl>& cells, const Pres& pr) {
        for (CellDecl& cd : cells) {
            std::vector<Id> s, t;
            std::string tok;
            std::stringstream ss(cd.src1);
            while (std::getline(ss, tok, '.')) s.push_back(tok);
            std::stringstream ts(cd.tgt1);
            while (std::getline(ts, tok, '.')) t.push_back(tok);
            std::map<Id, std::pair<Id, Id>> gend;
            for (const Morphism& m : pr.arrows) gend[m.id] = {m.src, m.tgt};
            auto ends = path_ends(s, gend, 0);
            s = rewrite(std::move(s), pr.rels);
            t = rewrite(std::move(t), pr.rels);
            cd.src1 = path_id(s, ends.first);
            cd.tgt1 = path_id(t, ends.first);
        }
    }

    void parse_functor() {
        int ln = line();
        std::string name = word();
        expect(":");
        std::string cn = word();
        expect("->");
        std::string dn = word();
        const FiniteCategory& cs = need_category(doc, cn, ln);
        const FiniteCategory& ct = need_category(doc, dn, ln);
        Functor f;
        f.src = cs;
        f.tgt = ct;
        std::map<Id, Id> gen_mor;
        expect("{");
        while (!eat("}")) {
            expect("on");
            Id k = word();
            expect("=");
            Id v = word();
            bool is_obj = false;
            for (const Id& o : cs.objects) is_obj |= o == k;
            if (is_obj)
                f.on_obj[k] = v;
            else
                gen_mor[k] = v;
            eat(";");
        }
        // composite morphisms are dotted generator paths; their images are
        // composed step by step
        for (const Morphism& m : cs.morphisms) {
            if (cs.is_identity(m.id)) {
                f.on_mor[m.id] = ct.id_on(f.on_obj.at(m.src));
                continue;
            }
            std::vector<Id> p;
            std::string tok;
            std::stringstream ss(m.id);
            while (std::getline(ss, tok, '.')) p.push_back(tok);
            Id cur;
            for (std::size_t i = 0; i < p.size(); ++i) {
                auto it = gen_mor.find(p[i]);
                if (it == gen_mor.end())
                    throw ParseError(ln, "functor " + name + " missing image of " + p[i]);
                cur = i == 0 ? it->second : ct.compose(it->second, cur);
            }
            f.on_mor[m.id] = cur;
        }
        ValidationReport r = cat2::kernel::validate(f);
        if (!r.pass)
            throw ParseError(ln, "functor " + name + " is invalid (" +
                                     r.violations.front().law + ")");
        functors.push_back({name, std::move(f)});
    }

    void parse_diagram() {
        int ln = line();
        std::string name = word();
        expect(":");
        std::string bn = word();
        expect("->");
        std::string cat = word();
        if (cat != "Cat") throw ParseError(ln, "diagram target must be Cat");
        const Finite2Category& base = need_twocat(doc, bn, ln);
        CatValued2Functor f;
        f.base = base;
        std::map<Id, std::string> one_refs;
        expect("{");
        while (!eat("}")) {
            expect("on");
            Id k = word();
            expect("=");
            std::string v = word();
            bool is_obj = false;
            for (const Id& o : base.objects) is_obj |= o == k;
            if (is_obj)
                f.on_obj[k] = need_category(doc, v, ln);
            else
                one_refs[k] = v;
            eat(";");
        }
        for (const Id& m : base.all_1cells()) {
            auto [a, b] = base.cell1_home(m);
            auto it = one_refs.find(m);
            if (it != one_refs.end()) {
                const Functor* fn = find_named(functors, it->second);
                if (!fn) throw ParseError(ln, "unknown functor: " + it->second);
                f.on1[m] = *fn;
            } else if (a == b && m == base.unit_on(a)) {
                f.on1[m] = identity_functor(f.obj(a));
            } else {
                throw ParseError(ln, "diagram " + name + " missing action on 1-cell " + m);
            }
        }
        for (const Id& m : base.all_2cells()) {
            auto [a, b] = base.cell2_home(m);
            if (!base.hom_at(a, b).is_identity(m))
                throw ParseError(ln, "diagram " + name +
                                         ": nonidentity base 2-cells need the structured format");
            f.on2[m] = identity_nat(f.cell1(base.hom_at(a, b).src(m)));
        }
        ValidationReport r = cat2::diagrams::validate(f);
        if (!r.pass)
            throw ParseError(ln, "diagram " + name + " is invalid (" +
                                     r.violations.front().law + ")");
        doc.diagrams.push_back({name, std::move(f)});
    }

    void parse_marking() {
        int ln = line();
        std::string name = word();
        expect(":");
        std::string bn = word();
        const Finite2Category& base = need_twocat(doc, bn, ln);
        Marking m;
        m.carrier = base;
        for (const auto& [o, u] : base.unit) m.marked.insert(u);
        expect("{");
        while (!eat("}")) {
            expect("mark");
            while (!at(";") && !at("}")) m.marked.insert(word());
            eat(";");
        }
        ValidationReport r = cat2::diagrams::validate(m);
        if (!r.pass)
            throw ParseError(ln, "marking " + name + " is invalid (" +
                                     r.violations.front().law + ")");
        doc.markings.push_back({name, std::move(m)});
    }

    void parse_task() {
        TaskRecord t;
        t.op = word();
        expect("(");
        if (!at(")")) do {
                std::string k = word();
                expect("=");
                std::string v = word();
                if (eat("(")) {
                    // computed references like elements(F).projection
                    v += "(" + word() + ")";
                    expect(")");
                    expect(".");
                    v += "." + word();
                }
                if (k == "flavor" || k == "variant" || k == "probes")
                    t.options[k] = v;
                else
                    t.args[k] = v;
            } while (eat(","));
        expect(")");
        doc.tasks.push_back(std::move(t));
    }

    Document parse_all() {
        while (pos < toks.size()) {
            int ln = line();
            std::string kw = word();
            if (kw == "category") {
                std::string name = word();
                Pres pr = pres_body(nullptr);
                doc.categories.push_back({name, close_presentation(pr, limits, ln)});
            } else if (kw == "twocategory") {
                std::string name = word();
                std::vector<CellDecl> cells;
                Pres pr = pres_body(&cells);
                normalize_cells(cells, pr);
                doc.two_categories.push_back(
                    {name, close_two_presentation(pr, cells, limits, ln)});
            } else if (kw == "functor") {
                parse_functor();
            } else if (kw == "diagram") {
                parse_diagram();
            } else if (kw == "marking") {
                parse_marking();
            } else if (kw == "task") {
                parse_task();
            } else {
                throw ParseError(ln, "unknown declaration: " + kw);
            }
        }
        canonicalize(doc);
        return std::move(doc);
    }
};

}  // namespace

// ---------------------------------------------------------------------------

Document parse(const std::string& text, const Limits& limits) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception& ex) {
                throw ParseError(0, std::string("invalid JSON: ") + ex.what());
            }
            return document_from_json(j);
        }
        break;
    }
    DslParser p;
    p.toks = lex(text);
    p.limits = limits;
    return p.parse_all();
}

std::string serialize(const Document& doc) {
    Document d = doc;
    canonicalize(d);
    json j;
    j["categories"] = json::array();
    for (const auto& [n, c] : d.categories) {
        json e = cat_to_json(c);
        e["name"] = n;
        j["categories"].push_back(e);
    }
    j["two_categories"] = json::array();
    for (const auto& [n, c] : d.two_categories) {
        json e = twocat_to_json(c);
        e["name"] = n;
        j["two_categories"].push_back(e);
    }
    j["diagrams"] = json::array();
    for (const auto& [n, f] : d.diagrams) {
        json e = diagram_to_json(d, f);
        e["name"] = n;
        j["diagrams"].push_back(e);
    }
    j["transformations"] = json::array();
    for (const auto& [n, t] : d.transformations) {
        json e = transformation_to_json(d, t);
        e["name"] = n;
        j["transformations"].push_back(e);
    }
    j["markings"] = json::array();
    for (const auto& [n, m] : d.markings) {
        json e = marking_to_json(d, m);
        e["name"] = n;
        j["markings"].push_back(e);
    }
    j["tasks"] = json::array();
    for (const TaskRecord& t : d.tasks)
        j["tasks"].push_back({{"op", t.op}, {"args", t.args}, {"options", t.options}});
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// task execution

namespace {

void absorb(TaskResult& tr, const ValidationReport& r) {
    tr.pass = tr.pass && r.pass;
    tr.violations.insert(tr.violations.end(), r.violations.begin(), r.violations.end());
    tr.notes.insert(tr.notes.end(), r.notes.begin(), r.notes.end());
}

const std::string& need_arg(const TaskRecord& t, const std::string& k) {
    auto it = t.args.find(k);
    if (it == t.args.end()) throw ParseError(0, "task " + t.op + " missing argument " + k);
    return it->second;
}

std::string option_or(const TaskRecord& t, const std::string& k, const std::string& dflt) {
    auto it = t.options.find(k);
    return it == t.options.end() ? dflt : it->second;
}

// reference expressions: NAME or elements(NAME).projection / .total
struct ElementsExpr {
    std::string diagram, field;
};
std::optional<ElementsExpr> parse_elements_expr(const std::string& s) {
    if (s.rfind("elements(", 0) != 0) return std::nullopt;
    std::size_t close = s.find(')');
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '.')
        return std::nullopt;
    return ElementsExpr{s.substr(9, close - 9), s.substr(close + 2)};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string counts_note(const Finite2Category& k) {
    return std::to_string(k.objects.size()) + " objects, " +
           std::to_string(k.all_1cells().size()) + " 1-cells, " +
           std::to_string(k.all_2cells().size()) + " 2-cells";
}

void absorb_kan(TaskResult& tr, const KanReport& kr) {
    tr.pass = tr.pass && kr.pass;
    for (const auto& [a, r] : kr.per_object) {
        for (const Violation& v : r.violations) tr.violations.push_back(v);
        for (const std::string& n : r.notes) tr.notes.push_back(a + ": " + n);
    }
    tr.notes.insert(tr.notes.end(), kr.per_probe.begin(), kr.per_probe.end());
}

void run_task(const Document& doc, const TaskRecord& t, const RunConfig& cfg,
              TaskResult& tr) {
    if (t.op == "validate") {
        const std::string& n = need_arg(t, "entity");
        if (const FiniteCategory* c = find_named(doc.categories, n)) {
            absorb(tr, cat2::kernel::validate(*c));
            tr.notes.push_back("category " + n);
        } else if (const Finite2Category* k = find_named(doc.two_categories, n)) {
            absorb(tr, cat2::kernel::validate(*k));
            tr.notes.push_back("2-category " + n + ": " + counts_note(*k));
        } else if (const CatValued2Functor* f = find_named(doc.diagrams, n)) {
            absorb(tr, cat2::diagrams::validate(*f));
            tr.notes.push_back("diagram " + n);
        } else if (const Transformation* tf = find_named(doc.transformations, n)) {
            absorb(tr, check_transformation(*tf));
            tr.notes.push_back("transformation " + n);
        } else if (const Marking* m = find_named(doc.markings, n)) {
            absorb(tr, cat2::diagrams::validate(*m));
            tr.notes.push_back("marking " + n);
        } else {
            throw ParseError(0, "unknown entity: " + n);
        }
    } else if (t.op == "elements") {
        const std::string& n = need_arg(t, "f");
        const CatValued2Functor& f = need_diagram(doc, n);
        std::string variant = option_or(t, "variant", "op");
        ElementsResult e =
            variant == "cov" ? elements_cov(f, cfg.limits) : elements_op(f, cfg.limits);
        tr.notes.push_back("total: " + counts_note(e.total));
        absorb(tr, cat2::kernel::validate(e.total));
        absorb(tr, is_discrete_2opfibration(e.opfib.k));
        if (!cfg.dot_prefix.empty())
            write_file(cfg.dot_prefix + "elements_" + n + ".dot", export_dot(n, e));
    } else if (t.op == "check-opfib") {
        const std::string& expr = need_arg(t, "k");
        auto ee = parse_elements_expr(expr);
        if (!ee || ee->field != "projection")
            throw ParseError(0, "check-opfib expects k=elements(NAME).projection");
        ElementsResult e = elements_op(need_diagram(doc, ee->diagram), cfg.limits);
        absorb(tr, is_discrete_2opfibration(e.projection));
    } else if (t.op == "reconstruct") {
        absorb(tr, reconstruction_roundtrip(need_diagram(doc, need_arg(t, "f")), cfg.limits));
    } else if (t.op == "equivalence") {
        Flavor fl = flavor_of(option_or(t, "flavor", "lax"));
        absorb(tr, equivalence_check(need_diagram(doc, need_arg(t, "f")),
                                     need_diagram(doc, need_arg(t, "g")), fl, cfg.limits));
    } else if (t.op == "comma-check") {
        const CatValued2Functor& f = need_diagram(doc, need_arg(t, "f"));
        CommaPointResult c = lax_comma_point(f, cfg.limits);
        tr.notes.push_back("comma: " + counts_note(c.total));
        absorb(tr, check_lax_comma_object(
                       f, c, cfg.probe_2cats.empty() ? default_probe_2cats() : cfg.probe_2cats,
                       cfg.limits));
    } else if (t.op == "comma-iso") {
        absorb(tr, elements_lax_comma_iso(need_diagram(doc, need_arg(t, "f")), cfg.limits));
    } else if (t.op == "conicalization") {
        LimitResult lr = conicalization_check(need_diagram(doc, need_arg(t, "w")),
                                              need_diagram(doc, need_arg(t, "f")), cfg.limits);
        tr.notes.push_back("limit: " + std::to_string(lr.limit.objects.size()) +
                           " objects, " + std::to_string(lr.limit.morphisms.size()) +
                           " morphisms");
        absorb(tr, lr.report);
    } else if (t.op == "weight-equivalence") {
        LimitResult lr = weight_laxn_equivalence_check(
            need_diagram(doc, need_arg(t, "z")), need_diagram(doc, need_arg(t, "f")),
            cfg.limits);
        tr.notes.push_back("limit: " + std::to_string(lr.limit.objects.size()) +
                           " objects, " + std::to_string(lr.limit.morphisms.size()) +
                           " morphisms");
        absorb(tr, lr.report);
    } else if (t.op == "lan-delta1") {
        KanReport kr = lan_delta1_check(
            need_diagram(doc, need_arg(t, "f")),
            cfg.probes.empty() ? default_probes() : cfg.probes, cfg.limits);
        absorb_kan(tr, kr);
    } else {
        throw ParseError(0, "unknown task op: " + t.op);
    }
}

}  // namespace

Report run(const Document& doc, const RunConfig& cfg) {
    Report rep;
    if (!cfg.dot_prefix.empty()) {
        for (const auto& [n, c] : doc.categories)
            write_file(cfg.dot_prefix + n + ".dot", export_dot(n, c));
        for (const auto& [n, k] : doc.two_categories)
            write_file(cfg.dot_prefix + n + ".dot", export_dot(n, k));
    }
    for (const TaskRecord& t : doc.tasks) {
        TaskResult tr;
        tr.op = t.op;
        auto start = std::chrono::steady_clock::now();
        try {
            run_task(doc, t, cfg, tr);
        } catch (const std::exception& ex) {
            tr.pass = false;
            tr.error = ex.what();
        }
        tr.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        rep.pass = rep.pass && tr.pass;
        rep.tasks.push_back(std::move(tr));
    }
    return rep;
}

std::string report_json(const Report& r, bool with_timing) {
    json j;
    j["pass"] = r.pass;
    j["tasks"] = json::array();
    for (const TaskResult& t : r.tasks) {
        json e;
        e["op"] = t.op;
        e["pass"] = t.pass;
        e["notes"] = t.notes;
        json vs = json::array();
        for (const Violation& v : t.violations)
            vs.push_back({{"law", v.law}, {"witness", v.witness}});
        e["violations"] = vs;
        if (!t.error.empty()) e["error"] = t.error;
        if (with_timing) e["elapsed_ms"] = t.elapsed_ms;
        j["tasks"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// DOT export

namespace {

std::string dot_quote(const Id& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const std::string& name, const FiniteCategory& c) {
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n  rankdir=LR;\n";
    for (const Id& o : c.objects) out << "  " << dot_quote(o) << ";\n";
    for (const Morphism& m : c.morphisms) {
        if (c.is_identity(m.id)) continue;
        out << "  " << dot_quote(m.src) << " -> " << dot_quote(m.tgt) << " [label="
            << dot_quote(m.id) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const std::string& name, const Finite2Category& k,
                       const std::set<Id>& marked) {
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n  rankdir=LR;\n";
    for (const Id& o : k.objects) out << "  " << dot_quote(o) << ";\n";
    // 1-cells under a nonidentity 2-cell are split through a midpoint anchor
    // so the 2-cell can be drawn between the anchors
    std::set<Id> anchored;
    for (const Id& d : k.all_2cells()) {
        auto [a, b] = k.cell2_home(d);
        const FiniteCategory& h = k.hom_at(a, b);
        if (h.is_identity(d)) continue;
        anchored.insert(h.src(d));
        anchored.insert(h.tgt(d));
    }
    for (const Id& f : k.all_1cells()) {
        auto [a, b] = k.cell1_home(f);
        if (a == b && f == k.unit_on(a)) continue;
        std::string style = marked.count(f) ? ", penwidth=2.0, color=blue" : "";
        if (anchored.count(f)) {
            Id anchor = "mid:" + f;
            out << "  " << dot_quote(anchor) << " [shape=point, label=\"\"];\n";
            out << "  " << dot_quote(a) << " -> " << dot_quote(anchor)
                << " [arrowhead=none, label=" << dot_quote(f) << style << "];\n";
            out << "  " << dot_quote(anchor) << " -> " << dot_quote(b) << " [label=\"\""
                << style << "];\n";
        } else {
            out << "  " << dot_quote(a) << " -> " << dot_quote(b) << " [label="
                << dot_quote(f) << style << "];\n";
        }
    }
    for (const Id& d : k.all_2cells()) {
        auto [a, b] = k.cell2_home(d);
        const FiniteCategory& h = k.hom_at(a, b);
        if (h.is_identity(d)) continue;
        out << "  " << dot_quote("mid:" + h.src(d)) << " -> " << dot_quote("mid:" + h.tgt(d))
            << " [style=dashed, label=" << dot_quote(d) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const std::string& name, const ElementsResult& e) {
    return export_dot(name, e.total, e.marking.marked);
}

}  // namespace cat2::shell
