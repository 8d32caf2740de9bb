#include "qexp/serialize.hpp"

namespace qexp {

using nlohmann::json;

json to_json(const BaseEnclosure& q) {
  json j{{"lo", to_string(q.lo())}, {"hi", to_string(q.hi())}};
  if (q.defining_alpha()) j["alpha"] = q.defining_alpha()->str();
  return j;
}

json to_json(const EntropyEnclosure& h) {
  json j{{"lo", to_string(h.lo)}, {"hi", to_string(h.hi)}};
  if (h.exact_radius) j["exact_radius"] = to_string(*h.exact_radius);
  return j;
}

json to_json(const RationalInterval& x) { return json{{"lo", to_string(x.lo)}, {"hi", to_string(x.hi)}}; }

json to_json(const Decomposition& d) { return json(d.strings()); }

json to_json(const SubshiftAutomaton& aut) {
  json states = json::array();
  json transitions = json::array();
  for (std::size_t s = 0; s < aut.size(); ++s) {
    states.push_back({aut.state(static_cast<int>(s)).first, aut.state(static_cast<int>(s)).second});
    for (Digit d = 0; d <= aut.alphabet().M(); ++d) {
      const int t = aut.next(static_cast<int>(s), d);
      if (t != SubshiftAutomaton::kNone) transitions.push_back({s, d, t});
    }
  }
  return json{{"alpha", aut.alpha().str()},
              {"M", aut.alphabet().M()},
              {"states", states},
              {"transitions", transitions},
              {"start", aut.start()}};
}

json to_json(const PlateauRecord& r) {
  json j{{"word", r.word.str()},
         {"q_L", to_json(r.q_left)},
         {"q_R", to_json(r.q_right)},
         {"entropy", to_json(r.entropy)},
         {"entropy_right", to_json(r.entropy_right)},
         {"class", r.kind.str()},
         {"ladder_index", nullptr},
         {"plateau", r.is_plateau},
         {"placement_certified", r.placement_certified}};
  if (r.ladder_index) j["ladder_index"] = *r.ladder_index;
  return j;
}

json to_json(const StaircaseRow& row) {
  json j{{"q", to_json(row.q)}, {"status", to_string(row.status)}, {"h", nullptr}, {"dim", nullptr}};
  if (row.h) j["h"] = to_json(*row.h);
  if (row.dim) j["dim"] = to_json(*row.dim);
  return j;
}

json to_json(const BridgeReport& report) {
  return json{{"q", to_json(report.q)},
              {"q_hat", to_json(report.q_hat)},
              {"H", to_json(report.direct)},
              {"H_star", to_json(report.image)},
              {"c_M_H_star", to_json(report.scaled)},
              {"agree", report.agree}};
}

BaseEnclosure base_from_json(const json& j, Alphabet alphabet) {
  try {
    std::optional<EpSequence> alpha;
    if (j.contains("alpha")) alpha = EpSequence::parse(j.at("alpha").get<std::string>(), alphabet);
    return BaseEnclosure(alphabet, parse_rational(j.at("lo").get<std::string>()),
                         parse_rational(j.at("hi").get<std::string>()), std::move(alpha));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed base enclosure: ") + e.what());
  }
}

}  // namespace qexp
