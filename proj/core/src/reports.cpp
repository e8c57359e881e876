#include "ceed/reports.hpp"

#include <cstdio>
#include <sstream>

namespace ceed::reports {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

namespace {

template <typename T, typename Fn>
std::string json_array(const std::vector<T>& items, Fn&& fmt) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out + "]";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string bursty_tsv(const ReportBundle& bundle) {
  std::ostringstream os;
  os << "rank\tsegment\tbursty_subwindow\tburst_probability\tweight\n";
  for (std::size_t i = 0; i < bundle.bursty.size(); ++i) {
    const auto& b = bundle.bursty[i];
    os << (i + 1) << '\t' << b.segment << '\t' << b.subwindow << '\t' << fixed6(b.probability)
       << '\t' << fixed6(b.weight) << '\n';
  }
  return os.str();
}

std::string events_json(const ReportBundle& bundle) {
  std::ostringstream os;
  os << "{\n  \"events\": [";
  for (std::size_t i = 0; i < bundle.events.size(); ++i) {
    const auto& e = bundle.events[i];
    os << (i ? ",\n" : "\n") << "    {\n"
       << "      \"id\": " << json_string(e.id) << ",\n"
       << "      \"label\": " << json_string(e.label) << ",\n"
       << "      \"segments\": "
       << json_array(e.segments, [](const std::string& s) { return json_string(s); }) << ",\n"
       << "      \"eventworthiness\": " << fixed6(e.worthiness) << ",\n"
       << "      \"tweet_count\": " << e.tweet_count << ",\n"
       << "      \"first_tweet\": " << json_string(format_timestamp(e.first_tweet)) << ",\n"
       << "      \"last_tweet\": " << json_string(format_timestamp(e.last_tweet)) << ",\n"
       << "      \"edges\": "
       << json_array(e.edges,
                     [](const auto& edge) {
                       return "{\"a\": " + json_string(edge.first.first) +
                              ", \"b\": " + json_string(edge.first.second) +
                              ", \"similarity\": " + fixed6(edge.second) + "}";
                     })
       << "\n    }";
  }
  os << (bundle.events.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

std::string cross_grid_csv(const ReportBundle& bundle) {
  const auto& m = bundle.cross;
  std::ostringstream os;
  os << "event";
  for (const auto& id : m.event_ids()) os << ',' << csv_field(id);
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << csv_field(m.event_ids()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) os << ',' << fixed6(m.at(i, j));
    os << '\n';
  }
  return os.str();
}

std::string cross_pairs_csv(const ReportBundle& bundle) {
  const auto& m = bundle.cross;
  const auto& threshold = bundle.manifest.config.cross_threshold;
  std::ostringstream os;
  os << "event_a,event_b,alpha" << (threshold ? ",cross" : "") << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      os << csv_field(m.event_ids()[i]) << ',' << csv_field(m.event_ids()[j]) << ','
         << fixed6(m.at(i, j));
      if (threshold) os << ',' << (m.at(i, j) >= *threshold ? "true" : "false");
      os << '\n';
    }
  }
  return os.str();
}

std::string cross_heatmap_tsv(const ReportBundle& bundle) {
  const auto& m = bundle.cross;
  std::ostringstream os;
  os << "row\tcol\tvalue\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      os << m.event_ids()[i] << '\t' << m.event_ids()[j] << '\t' << fixed6(m.at(i, j)) << '\n';
    }
  }
  return os.str();
}

std::string topics_json(const ReportBundle& bundle) {
  std::ostringstream os;
  os << "{\n  \"events\": [";
  for (std::size_t i = 0; i < bundle.timelines.size(); ++i) {
    const auto& tl = bundle.timelines[i];
    os << (i ? ",\n" : "\n") << "    {\n"
       << "      \"event\": " << json_string(tl.event_id) << ",\n"
       << "      \"label\": " << json_string(tl.label) << ",\n"
       << "      \"subwindows\": " << tl.subwindows << ",\n"
       << "      \"start\": " << json_string(format_timestamp(tl.start)) << ",\n"
       << "      \"end\": " << json_string(format_timestamp(tl.end)) << ",\n"
       << "      \"diagnostic\": " << (tl.diagnostic.empty() ? "null" : json_string(tl.diagnostic))
       << ",\n      \"topics\": [";
    for (std::size_t t = 0; t < tl.topics.size(); ++t) {
      const auto& topic = tl.topics[t];
      os << (t ? ",\n" : "\n") << "        {\"topic\": " << topic.topic_id << ", \"segments\": "
         << json_array(topic.segments, [](const std::string& s) { return json_string(s); })
         << ", \"popularity\": "
         << json_array(topic.popularity, [](double v) { return fixed6(v); }) << "}";
    }
    os << (tl.topics.empty() ? "]" : "\n      ]") << "\n    }";
  }
  os << (bundle.timelines.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

std::string topic_timeline_csv(const ReportBundle& bundle) {
  int width = 0;
  for (const auto& tl : bundle.timelines) width = std::max(width, tl.subwindows);
  std::ostringstream os;
  os << "event,topic";
  for (int m = 0; m < width; ++m) os << ",sw" << m;
  os << '\n';
  for (const auto& tl : bundle.timelines) {
    for (const auto& topic : tl.topics) {
      os << csv_field(tl.event_id) << ',' << topic.topic_id;
      for (int m = 0; m < width; ++m) {
        os << ',';
        if (static_cast<std::size_t>(m) < topic.popularity.size()) {
          os << fixed6(topic.popularity[static_cast<std::size_t>(m)]);
        }
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string topic_timeline_long_csv(const ReportBundle& bundle) {
  std::ostringstream os;
  os << "event,topic,subwindow,popularity\n";
  for (const auto& tl : bundle.timelines) {
    for (const auto& topic : tl.topics) {
      for (std::size_t m = 0; m < topic.popularity.size(); ++m) {
        os << csv_field(tl.event_id) << ',' << topic.topic_id << ',' << m << ','
           << fixed6(topic.popularity[m]) << '\n';
      }
    }
  }
  return os.str();
}

std::string manifest_json(const ReportBundle& bundle) {
  const auto& m = bundle.manifest;
  const auto& c = m.config;
  std::ostringstream os;
  os << "{\n  \"config\": {\n"
     << "    \"input\": " << json_string(c.input.string()) << ",\n"
     << "    \"lexicon\": " << json_string(c.lexicon.string()) << ",\n"
     << "    \"stopwords\": " << (c.stopwords ? json_string(c.stopwords->string()) : "null") << ",\n"
     << "    \"window_start\": " << json_string(format_timestamp(m.window_start)) << ",\n"
     << "    \"window_end\": " << json_string(format_timestamp(m.window_end)) << ",\n"
     << "    \"subwindows\": " << c.subwindows << ",\n"
     << "    \"hashtag_weight\": " << c.params.hashtag_weight << ",\n"
     << "    \"knn\": " << c.params.knn << ",\n"
     << "    \"tau\": " << fixed6(c.params.tau) << ",\n"
     << "    \"event_subwindows\": " << c.params.event_subwindows << ",\n"
     << "    \"dump_bursty\": " << (c.dump_bursty ? "true" : "false") << ",\n"
     << "    \"cross_threshold\": " << (c.cross_threshold ? fixed6(*c.cross_threshold) : "null")
     << ",\n"
     << "    \"workers\": " << c.params.workers << "\n  },\n"
     << "  \"counts\": {\n"
     << "    \"parsed_lines\": " << m.lines << ",\n"
     << "    \"kept\": " << m.corpus.kept << ",\n"
     << "    \"retweets_folded\": " << m.corpus.retweets << ",\n"
     << "    \"orphan_retweets\": " << m.corpus.orphan_retweets << ",\n"
     << "    \"out_of_window\": " << m.corpus.out_of_window << ",\n"
     << "    \"skipped\": " << m.skipped << ",\n"
     << "    \"reconciled\": " << (m.reconciles() ? "true" : "false") << ",\n"
     << "    \"segments\": " << m.segments << ",\n"
     << "    \"bursty_segments\": " << m.bursty << ",\n"
     << "    \"candidate_events\": " << m.candidates << ",\n"
     << "    \"events\": " << m.events << "\n  },\n"
     << "  \"timings_ms\": {";
  for (std::size_t i = 0; i < m.timings.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    " << json_string(m.timings[i].first) << ": "
       << fixed6(m.timings[i].second);
  }
  os << (m.timings.empty() ? "},\n" : "\n  },\n") << "  \"diagnostics\": "
     << json_array(m.diagnostics, [](const std::string& s) { return json_string(s); }) << "\n}\n";
  return os.str();
}

}  // namespace ceed::reports
