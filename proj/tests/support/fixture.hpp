#pragma once

// The shipped example database plus its messages spelled out, shared by the
// unit and acceptance suites. The m* constants intentionally restate the
// file's contents rather than reading them back, so a drifting fixture file
// fails loudly.

#include <string>

#include "dnml/model.hpp"
#include "dnml/storage.hpp"

namespace dnmltest {

inline const dnml::Database& fixture_db() {
    static const dnml::Database db = dnml::load_database(DNML_FIXTURE_JSON);
    return db;
}

inline dnml::Message m1() {
    return dnml::Message({"women", "stroke"}, {"stroke deaths"}, "top-cause");
}
inline dnml::Message m2() {
    return dnml::Message({"women", "stroke"}, {"stroke prevalence"}, "affects");
}
inline dnml::Message m3() {
    return dnml::Message({"black women", "stroke"}, {"stroke prevalence"},
                         "higher-risk");
}
inline dnml::Message m4() {
    return dnml::Message({"pregnant women", "preeclampsia"},
                         {"stroke risk factor"}, "increases");
}
inline dnml::Message m5() {
    return dnml::Message({"high blood pressure", "stroke"},
                         {"stroke risk factor"}, "increases");
}
inline dnml::Message m6() {
    return dnml::Message({"black women", "white women"}, {"stroke deaths"},
                         "compares");
}
inline dnml::Message m7() {
    return dnml::Message({"black women", "white women", "stroke"},
                         {"first-time stroke rate"}, "compares");
}
inline dnml::Message m8() {
    return dnml::Message({"pregnant women", "birth control pills"},
                         {"stroke risk factor"}, "increases");
}
inline dnml::Message m9() {
    return dnml::Message({"europe", "covid"}, {"covid cases"}, "spreads");
}

inline dnml::MessageSeq n1_messages() { return {m1(), m2(), m3(), m4(), m5()}; }
inline dnml::MessageSeq n2_messages() { return {m6(), m7(), m8()}; }
inline dnml::MessageSeq n3_messages() { return {m9()}; }

inline dnml::Message empty_message() { return dnml::Message(); }

}  // namespace dnmltest
