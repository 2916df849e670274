#include "eo/bsl/parser.hpp"

#include <cctype>

#include "eo/error.hpp"

namespace eo::bsl {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// "Instance: Robot" -> {"Instance", "Robot"}
std::pair<std::string, std::string> split_keyword(const std::string& tail) {
  const auto colon = tail.find(':');
  if (colon == std::string::npos) return {trim(tail), {}};
  return {trim(tail.substr(0, colon)), trim(tail.substr(colon + 1))};
}

class Parser {
 public:
  explicit Parser(const SourceBlock& block) : block_(block) {}

  ParseResult run() {
    while (pos_ < lines().size()) {
      const SourceLine& line = lines()[pos_];
      if (line.depth != 0) fail(Errc::OrphanRestriction, line, "nested line without a declaration");
      const std::size_t end = body_end(pos_);
      result_.declarations.push_back(declaration(pos_, end));
      pos_ = end;
    }
    return std::move(result_);
  }

 private:
  const std::vector<SourceLine>& lines() const { return block_.lines; }

  [[noreturn]] void fail(Errc code, const SourceLine& line, const std::string& what) const {
    const std::string origin = block_.origin.empty() ? "<bsl>" : block_.origin;
    throw Error(code, origin + ":" + std::to_string(line.line) + ": " + what);
  }

  void warn(const SourceLine& line, std::string what) {
    result_.warnings.push_back({std::move(what), line.line});
  }

  // First index after `begin` whose depth is <= depth(begin).
  std::size_t body_end(std::size_t begin) const {
    const int depth = lines()[begin].depth;
    std::size_t i = begin + 1;
    while (i < lines().size() && lines()[i].depth > depth) ++i;
    return i;
  }

  Declaration declaration(std::size_t begin, std::size_t end) {
    const SourceLine& head = lines()[begin];
    Declaration decl;
    decl.origin = Origin{block_.origin, head.line, lines()[end - 1].last_line};
    const auto [keyword, name] = split_keyword(head.tail);
    if (name.empty()) fail(Errc::UnknownKeyword, head, "expected `<Kind>: <Keyword>: <Name>`");

    if (head.head == "Concept" && keyword == "Instance") {
      if (end != begin + 1) fail(Errc::UnknownKeyword, lines()[begin + 1], "concepts take no body");
      decl.body = ConceptDecl{name};
    } else if (auto kind = parse_property_kind(head.head); kind && keyword == "Individual") {
      decl.body = property(*kind, name, begin, end);
    } else if (keyword == "Model") {
      decl.body = model(head.head, name, begin, end);
    } else if (keyword == "Individual") {
      if (head.head == "View") {
        decl.body = view(name, begin, end);
      } else {
        decl.body = individual(head.head, name, begin, end);
      }
    } else {
      fail(Errc::UnknownKeyword, head, "unknown declaration `" + head.head + ": " + keyword + "`");
    }
    return decl;
  }

  PropertyDecl property(PropertyKind kind, const std::string& name, std::size_t begin, std::size_t end) {
    PropertyDecl p{name, kind, std::nullopt, std::nullopt};
    for (std::size_t i = begin + 1; i < end; ++i) {
      const SourceLine& l = lines()[i];
      if (l.depth != 1) fail(Errc::OrphanRestriction, l, "unexpected nesting in property declaration");
      if (l.head == "Range") {
        p.range = l.tail;
      } else if (l.head == "DataType") {
        auto t = parse_data_type(l.tail);
        if (!t) fail(Errc::UnknownKeyword, l, "unknown data type `" + l.tail + "`");
        p.data_type = *t;
      } else {
        fail(Errc::UnknownKeyword, l, "unknown property clause `" + l.head + "`");
      }
    }
    return p;
  }

  ModelDecl model(const std::string& concept_name, const std::string& name, std::size_t begin, std::size_t end) {
    ModelDecl m{concept_name, name, {}, std::nullopt};
    std::size_t i = begin + 1;
    while (i < end) {
      const SourceLine& l = lines()[i];
      const std::size_t stop = body_end(i);
      if (l.head == "SetModel") {
        if (stop != i + 1) fail(Errc::OrphanRestriction, lines()[i + 1], "restriction under SetModel");
        m.set_model = l.tail;
      } else if (parse_property_kind(l.head)) {
        m.events.push_back(model_event(i, stop));
      } else if (parse_restriction_kind(l.head) || is_ignored_restriction(l.head)) {
        fail(Errc::OrphanRestriction, l, "restriction `" + l.head + "` outside a model event");
      } else {
        fail(Errc::UnknownKeyword, l, "unknown model clause `" + l.head + "`");
      }
      i = stop;
    }
    return m;
  }

  ModelEvent model_event(std::size_t begin, std::size_t end) {
    const SourceLine& head = lines()[begin];
    ModelEvent ev;
    ev.kind = *parse_property_kind(head.head);
    ev.property = head.tail;
    if (ev.property.empty()) fail(Errc::UnknownKeyword, head, "model event without a property name");
    std::size_t i = begin + 1;
    while (i < end) {
      const SourceLine& l = lines()[i];
      const std::size_t stop = body_end(i);
      if (auto k = parse_restriction_kind(l.head)) {
        if (stop != i + 1) fail(Errc::OrphanRestriction, lines()[i + 1], "nested line under a restriction");
        if (ev.find(*k)) {
          fail(Errc::DuplicateRestrictionKind, l,
               "duplicate " + std::string(to_string(*k)) + " on `" + ev.property + "`");
        }
        ev.restrictions.push_back({*k, l.tail});
      } else if (is_ignored_restriction(l.head)) {
        warn(l, "restriction `" + l.head + "` is not supported and was ignored");
      } else if (parse_property_kind(l.head)) {
        ev.children.push_back(model_event(i, stop));
      } else {
        fail(Errc::UnknownKeyword, l, "unknown restriction `" + l.head + "`");
      }
      i = stop;
    }
    return ev;
  }

  std::vector<Assignment> assignments(std::size_t begin, std::size_t end) {
    std::vector<Assignment> out;
    std::size_t i = begin;
    while (i < end) {
      const SourceLine& l = lines()[i];
      const std::size_t stop = body_end(i);
      if (parse_restriction_kind(l.head)) fail(Errc::OrphanRestriction, l, "restriction inside an individual");
      Assignment a{l.head, l.tail, {}};
      a.children = assignments(i + 1, stop);
      out.push_back(std::move(a));
      i = stop;
    }
    return out;
  }

  IndividualDecl individual(const std::string& concept_name, const std::string& name, std::size_t begin,
                            std::size_t end) {
    IndividualDecl ind{concept_name, name, std::nullopt, {}};
    for (auto& a : assignments(begin + 1, end)) {
      if (a.property == "SetModel") {
        ind.set_model = a.value;
      } else {
        ind.assignments.push_back(std::move(a));
      }
    }
    return ind;
  }

  ViewDecl view(const std::string& name, std::size_t begin, std::size_t end) {
    ViewDecl v;
    v.name = name;
    std::size_t i = begin + 1;
    while (i < end) {
      const std::size_t stop = body_end(i);
      view_field(v, i, stop);
      i = stop;
    }
    return v;
  }

  void view_field(ViewDecl& v, std::size_t at, std::size_t end) {
    const SourceLine& l = lines()[at];
    bool nested_ok = false;
    if (l.head == "SetModel") {
      v.set_model = l.tail;
    } else if (l.head == "ConceptPage") {
      v.concept_page = l.tail;
    } else if (l.head == "IndividualID") {
      v.individual_id = l.tail;
    } else if (l.head == "ViewConcept") {
      v.view_concept = l.tail;
      nested_ok = true;
    } else if (l.head == "IndividualList") {
      v.individual_list = l.tail;
    } else if (l.head == "ViewMode") {
      v.view_mode = l.tail;
    } else if (l.head == "Title") {
      v.title = l.tail;
    } else if (l.head == "Include") {
      v.include = l.tail;
    } else if (l.head == "Exclude") {
      v.exclude = l.tail;
    } else if (l.head == "Control") {
      v.controls.push_back(control(at, end));
      return;
    } else {
      fail(Errc::UnknownKeyword, l, "unknown view field `" + l.head + "`");
    }
    if (!nested_ok && end != at + 1) fail(Errc::UnknownKeyword, lines()[at + 1], "unexpected nesting in view");
    std::size_t i = at + 1;
    while (i < end) {
      const std::size_t stop = body_end(i);
      view_field(v, i, stop);
      i = stop;
    }
  }

  ViewControl control(std::size_t begin, std::size_t end) {
    ViewControl c;
    c.property = lines()[begin].tail;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const SourceLine& l = lines()[i];
      if (l.depth != lines()[begin].depth + 1) fail(Errc::UnknownKeyword, l, "unexpected nesting in control");
      if (l.head == "Title") {
        c.title = l.tail;
      } else if (l.head == "ControlType") {
        if (l.tail != "button") fail(Errc::UnknownControlType, l, "unsupported control type `" + l.tail + "`");
        c.control_type = l.tail;
      } else if (l.head == "Value") {
        c.value = l.tail;
      } else {
        fail(Errc::UnknownKeyword, l, "unknown control field `" + l.head + "`");
      }
    }
    if (c.control_type.empty()) c.control_type = "button";
    return c;
  }

  const SourceBlock& block_;
  std::size_t pos_ = 0;
  ParseResult result_;
};

// ---- canonical printer ----

void indent(std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth), ':');
  if (depth) out += ' ';
}

void line(std::string& out, int depth, std::string_view head, std::string_view tail) {
  indent(out, depth);
  out += head;
  out += ": ";
  out += tail;
  out += '\n';
}

void print_event(std::string& out, const ModelEvent& ev, int depth) {
  line(out, depth, to_string(ev.kind), ev.property);
  for (const auto& r : ev.restrictions) line(out, depth + 1, to_string(r.kind), r.expr);
  for (const auto& c : ev.children) print_event(out, c, depth + 1);
}

void print_assignment(std::string& out, const Assignment& a, int depth) {
  line(out, depth, a.property, a.value);
  for (const auto& c : a.children) print_assignment(out, c, depth + 1);
}

struct DeclPrinter {
  std::string& out;

  void operator()(const ConceptDecl& d) const { line(out, 0, "Concept", "Instance: " + d.name); }
  void operator()(const PropertyDecl& d) const {
    line(out, 0, to_string(d.kind), "Individual: " + d.name);
    if (d.range) line(out, 1, "Range", *d.range);
    if (d.data_type) line(out, 1, "DataType", to_string(*d.data_type));
  }
  void operator()(const ModelDecl& d) const {
    line(out, 0, d.concept_name, "Model: " + d.name);
    if (d.set_model) line(out, 1, "SetModel", *d.set_model);
    for (const auto& ev : d.events) print_event(out, ev, 1);
  }
  void operator()(const IndividualDecl& d) const {
    line(out, 0, d.concept_name, "Individual: " + d.name);
    if (d.set_model) line(out, 1, "SetModel", *d.set_model);
    for (const auto& a : d.assignments) print_assignment(out, a, 1);
  }
  void operator()(const ViewDecl& d) const {
    line(out, 0, "View", "Individual: " + d.name);
    line(out, 1, "SetModel", d.set_model);
    line(out, 1, "ConceptPage", d.concept_page);
    line(out, 1, "IndividualID", d.individual_id);
    line(out, 1, "ViewConcept", d.view_concept);
    line(out, 2, "IndividualList", d.individual_list);
    line(out, 2, "ViewMode", d.view_mode);
    if (d.title) line(out, 2, "Title", *d.title);
    if (d.include) line(out, 2, "Include", *d.include);
    if (d.exclude) line(out, 2, "Exclude", *d.exclude);
    for (const auto& c : d.controls) {
      line(out, 2, "Control", c.property);
      line(out, 3, "Title", c.title);
      line(out, 3, "ControlType", c.control_type);
      line(out, 3, "Value", c.value);
    }
  }
};

}  // namespace

ParseResult parse(const SourceBlock& block) { return Parser(block).run(); }

ParseResult parse_source(std::string_view source, std::string origin) {
  return parse(lex(source, std::move(origin)));
}

std::string print(const std::vector<Declaration>& decls) {
  std::string out;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (i) out += '\n';
    std::visit(DeclPrinter{out}, decls[i].body);
  }
  return out;
}

}  // namespace eo::bsl
