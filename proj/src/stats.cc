// Copyright 2026 The vaminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vaminer/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

using json = nlohmann::json;

namespace {

double Percent(uint64_t part, uint64_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string TsvField(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

// Display width in code points, good enough for aligned plain text.
size_t Width(std::string_view s) { return text::CodePointOffset(s, s.size()); }

std::string PadRight(std::string_view s, size_t width) {
  std::string out(s);
  for (size_t w = Width(s); w < width; ++w) out.push_back(' ');
  return out;
}

std::string PadLeft(std::string_view s, size_t width) {
  std::string out;
  for (size_t w = Width(s); w < width; ++w) out.push_back(' ');
  out += s;
  return out;
}

std::string Thousands(uint64_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  int n = static_cast<int>(digits.size());
  for (int i = 0; i < n; ++i) {
    out.push_back(digits[static_cast<size_t>(i)]);
    if ((n - i - 1) % 3 == 0 && i != n - 1) out.push_back(',');
  }
  return out;
}

template <typename Row>
void SortRows(std::vector<Row> *rows, uint64_t Row::*count) {
  std::sort(rows->begin(), rows->end(), [count](const Row &a, const Row &b) {
    if (a.*count != b.*count) return a.*count > b.*count;
    return a.key < b.key;
  });
}

JoinedTable Join(Dimension dimension, const std::map<std::string, uint64_t> &va,
                 const std::map<std::string, uint64_t> &articles, uint64_t total_va,
                 uint64_t total_articles) {
  JoinedTable table;
  table.dimension = dimension;
  table.total_va = total_va;
  table.total_articles = total_articles;
  std::set<std::string> keys;
  for (const auto &[k, v] : va) keys.insert(k);
  for (const auto &[k, v] : articles) keys.insert(k);
  for (const auto &key : keys) {
    JoinedRow row;
    row.key = key;
    auto v = va.find(key);
    row.va = v == va.end() ? 0 : v->second;
    auto a = articles.find(key);
    row.articles = a == articles.end() ? 0 : a->second;
    row.va_share = Percent(row.va, total_va);
    row.article_share = Percent(row.articles, total_articles);
    table.rows.push_back(std::move(row));
  }
  SortRows(&table.rows, &JoinedRow::va);
  return table;
}

size_t Limit(size_t n, size_t top) { return top == 0 ? n : std::min(n, top); }

}  // namespace

std::string_view DimensionName(Dimension d) {
  switch (d) {
    case Dimension::kSource: return "source";
    case Dimension::kModifier: return "modifier";
    case Dimension::kCountry: return "country";
    case Dimension::kSection: return "section";
    case Dimension::kAuthor: return "author";
  }
  return "";
}

std::string FormatPercent(double pct) { return Fixed(pct, 1) + "%"; }

FreqTable MakeFreqTable(Dimension dimension, const std::map<std::string, uint64_t> &counts,
                        uint64_t total) {
  FreqTable table;
  table.dimension = dimension;
  table.total = total;
  for (const auto &[key, count] : counts) {
    table.rows.push_back({key, count, Percent(count, total)});
  }
  SortRows(&table.rows, &FreqRow::count);
  return table;
}

json FreqTable::ToJson(size_t top) const {
  json rows_json = json::array();
  for (size_t i = 0; i < Limit(rows.size(), top); ++i) {
    rows_json.push_back({{"key", rows[i].key}, {"count", rows[i].count}, {"share", rows[i].share}});
  }
  return {{"dimension", DimensionName(dimension)}, {"total", total}, {"rows", rows_json}};
}

FreqTable FreqSources(const std::vector<Candidate> &unique_true_va) {
  std::map<std::string, uint64_t> counts;
  for (const Candidate &c : unique_true_va) ++counts[c.SourceLabel()];
  return MakeFreqTable(Dimension::kSource, counts, unique_true_va.size());
}

FreqTable FreqModifiers(const std::vector<Candidate> &unique_true_va) {
  std::map<std::string, uint64_t> counts;
  uint64_t total = 0;
  for (const Candidate &c : unique_true_va) {
    if (c.modifier.empty()) continue;
    ++counts[c.modifier];
    ++total;
  }
  return MakeFreqTable(Dimension::kModifier, counts, total);
}

FreqTable FreqModifierCountries(const std::vector<Candidate> &unique_true_va,
                                const std::set<std::string, std::less<>> &countries) {
  std::map<std::string, uint64_t> counts;
  uint64_t total = 0;
  for (const Candidate &c : unique_true_va) {
    if (c.modifier.empty()) continue;
    ++total;
    if (countries.count(c.modifier) > 0) ++counts[c.modifier];
  }
  return MakeFreqTable(Dimension::kCountry, counts, total);
}

std::set<std::string, std::less<>> LoadCountries(const std::string &path) {
  std::set<std::string, std::less<>> countries;
  LineReader reader(path);
  std::string line;
  while (reader.Next(&line)) {
    std::string_view name = text::Trim(line);
    if (name.empty() || name.front() == '#') continue;
    countries.emplace(text::NormalizeSurface(name));
  }
  return countries;
}

JoinedTable BySection(const std::vector<Candidate> &unique_true_va, const CorpusSummary &corpus) {
  std::map<std::string, uint64_t> va;
  for (const Candidate &c : unique_true_va) ++va[c.section];
  return Join(Dimension::kSection, va, corpus.sections, unique_true_va.size(), corpus.n_articles);
}

JoinedTable ByAuthor(const std::vector<Candidate> &unique_true_va, const CorpusSummary &corpus) {
  std::map<std::string, uint64_t> va;
  for (const Candidate &c : unique_true_va) ++va[c.author];
  return Join(Dimension::kAuthor, va, corpus.authors, unique_true_va.size(), corpus.n_articles);
}

json JoinedTable::ToJson(size_t top) const {
  json rows_json = json::array();
  for (size_t i = 0; i < Limit(rows.size(), top); ++i) {
    const JoinedRow &r = rows[i];
    rows_json.push_back({{"key", r.key},
                         {"va", r.va},
                         {"va_share", r.va_share},
                         {"articles", r.articles},
                         {"article_share", r.article_share}});
  }
  return {{"dimension", DimensionName(dimension)},
          {"total_va", total_va},
          {"total_articles", total_articles},
          {"rows", rows_json}};
}

YearSeries PerYear(const std::vector<Candidate> &candidates, const LabelState &labels,
                   const Blacklist &blacklist, const std::map<int, uint64_t> &articles_per_year) {
  std::map<int, std::pair<uint64_t, uint64_t>> counts;
  YearSeries series;
  for (const Candidate &c : candidates) {
    if (IsSuppressed(c, blacklist)) continue;
    const bool is_true = labels.VerdictOf(c.candidate_id) == Verdict::kTrueVa;
    auto articles = c.year ? articles_per_year.find(*c.year) : articles_per_year.end();
    if (articles == articles_per_year.end() || articles->second == 0) {
      ++series.unknown_year_candidates;
      if (is_true) ++series.unknown_year_true;
      continue;
    }
    auto &[n, t] = counts[*c.year];
    ++n;
    if (is_true) ++t;
  }
  for (const auto &[year, articles] : articles_per_year) {
    if (articles == 0) continue;
    YearRow row;
    row.year = year;
    row.articles = articles;
    auto it = counts.find(year);
    if (it != counts.end()) {
      row.candidates = it->second.first;
      row.true_va = it->second.second;
    }
    if (row.candidates > 0) row.precision_pct = Percent(row.true_va, row.candidates);
    row.cand_per_thousand = 1000.0 * static_cast<double>(row.candidates) / static_cast<double>(articles);
    row.true_per_thousand = 1000.0 * static_cast<double>(row.true_va) / static_cast<double>(articles);
    series.rows.push_back(row);
  }
  return series;
}

json YearSeries::ToJson() const {
  json rows_json = json::array();
  for (const YearRow &r : rows) {
    rows_json.push_back({{"year", r.year},
                         {"articles", r.articles},
                         {"candidates", r.candidates},
                         {"true_va", r.true_va},
                         {"precision_pct", r.precision_pct ? json(*r.precision_pct) : json(nullptr)},
                         {"cand_per_thousand", r.cand_per_thousand},
                         {"true_per_thousand", r.true_per_thousand}});
  }
  return {{"rows", rows_json},
          {"unknown_year_candidates", unknown_year_candidates},
          {"unknown_year_true", unknown_year_true}};
}

// ---------------------------------------------------------------------------
// Rendering

std::string RenderText(const FreqTable &table, size_t top) {
  const size_t n = Limit(table.rows.size(), top);
  size_t count_width = 5;
  for (size_t i = 0; i < n; ++i) {
    count_width = std::max(count_width, Thousands(table.rows[i].count).size());
  }
  std::ostringstream out;
  out << PadLeft("count", count_width) << "  " << PadLeft("share", 6) << "  "
      << DimensionName(table.dimension) << '\n';
  for (size_t i = 0; i < n; ++i) {
    const FreqRow &r = table.rows[i];
    out << PadLeft(Thousands(r.count), count_width) << "  " << PadLeft(FormatPercent(r.share), 6)
        << "  " << r.key << '\n';
  }
  return out.str();
}

std::string RenderText(const JoinedTable &table, size_t top) {
  const size_t n = Limit(table.rows.size(), top);
  size_t key_width = DimensionName(table.dimension).size();
  for (size_t i = 0; i < n; ++i) key_width = std::max(key_width, Width(table.rows[i].key));
  const size_t va_width = std::max<size_t>(5, Thousands(table.total_va).size());
  const size_t art_width = std::max<size_t>(8, Thousands(table.total_articles).size());
  std::ostringstream out;
  out << PadLeft("VA", va_width) << "  " << PadLeft(Thousands(table.total_va), 7) << "  "
      << PadRight(DimensionName(table.dimension), key_width) << "  "
      << PadLeft("articles", art_width) << "  " << PadLeft(Thousands(table.total_articles), 9)
      << '\n';
  for (size_t i = 0; i < n; ++i) {
    const JoinedRow &r = table.rows[i];
    out << PadLeft(Thousands(r.va), va_width) << "  " << PadLeft(FormatPercent(r.va_share), 7)
        << "  " << PadRight(r.key, key_width) << "  " << PadLeft(Thousands(r.articles), art_width)
        << "  " << PadLeft(FormatPercent(r.article_share), 9) << '\n';
  }
  return out.str();
}

std::string RenderText(const YearSeries &series) {
  std::ostringstream out;
  out << "year  articles  candidates  true_va  precision  cand/1000  true/1000\n";
  for (const YearRow &r : series.rows) {
    out << r.year << "  " << PadLeft(Thousands(r.articles), 8) << "  "
        << PadLeft(std::to_string(r.candidates), 10) << "  " << PadLeft(std::to_string(r.true_va), 7)
        << "  " << PadLeft(r.precision_pct ? FormatPercent(*r.precision_pct) : "-", 9) << "  "
        << PadLeft(Fixed(r.cand_per_thousand, 3), 9) << "  "
        << PadLeft(Fixed(r.true_per_thousand, 3), 9) << '\n';
  }
  if (series.unknown_year_candidates > 0) {
    out << "unknown year: " << series.unknown_year_candidates << " candidates, "
        << series.unknown_year_true << " true VA\n";
  }
  return out.str();
}

std::string RenderTsv(const FreqTable &table) {
  std::ostringstream out;
  out << DimensionName(table.dimension) << "\tcount\tshare_pct\n";
  for (const FreqRow &r : table.rows) {
    out << TsvField(r.key) << '\t' << r.count << '\t' << Fixed(r.share, 1) << '\n';
  }
  return out.str();
}

std::string RenderTsv(const JoinedTable &table) {
  std::ostringstream out;
  out << DimensionName(table.dimension) << "\tva\tva_share_pct\tarticles\tarticle_share_pct\n";
  for (const JoinedRow &r : table.rows) {
    out << TsvField(r.key) << '\t' << r.va << '\t' << Fixed(r.va_share, 1) << '\t' << r.articles
        << '\t' << Fixed(r.article_share, 1) << '\n';
  }
  return out.str();
}

std::string RenderSeriesCsv(const YearSeries &series) {
  std::ostringstream out;
  out << "year,candidates,true_va,precision_pct,cand_per_thousand,true_per_thousand\n";
  for (const YearRow &r : series.rows) {
    out << r.year << ',' << r.candidates << ',' << r.true_va << ','
        << (r.precision_pct ? Fixed(*r.precision_pct, 2) : std::string()) << ','
        << Fixed(r.cand_per_thousand, 4) << ',' << Fixed(r.true_per_thousand, 4) << '\n';
  }
  return out.str();
}

std::string RenderSeriesSvg(const YearSeries &series) {
  const double width = 720, height = 360, left = 60, right = 60, top = 30, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  uint64_t max_count = 1;
  for (const YearRow &r : series.rows) max_count = std::max(max_count, r.candidates);
  const size_t n = std::max<size_t>(series.rows.size(), 1);
  const double slot = plot_w / static_cast<double>(n);
  const double bar = slot * 0.38;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\">"
         "Candidates and true VA per year</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left + plot_w << "\" y1=\"" << top << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">" << max_count
      << "</text>\n";
  svg << "<text x=\"" << left + plot_w + 6 << "\" y=\"" << top + 4 << "\">100%</text>\n";
  svg << "<text x=\"" << left + plot_w + 6 << "\" y=\"" << top + plot_h << "\">0%</text>\n";

  std::string line_points;
  for (size_t i = 0; i < series.rows.size(); ++i) {
    const YearRow &r = series.rows[i];
    const double x0 = left + slot * static_cast<double>(i) + slot * 0.1;
    const double hc = plot_h * static_cast<double>(r.candidates) / static_cast<double>(max_count);
    const double ht = plot_h * static_cast<double>(r.true_va) / static_cast<double>(max_count);
    svg << "<rect x=\"" << Fixed(x0, 1) << "\" y=\"" << Fixed(top + plot_h - hc, 1)
        << "\" width=\"" << Fixed(bar, 1) << "\" height=\"" << Fixed(hc, 1)
        << "\" fill=\"#9db4d6\"><title>" << r.year << ": " << r.candidates
        << " candidates</title></rect>\n";
    svg << "<rect x=\"" << Fixed(x0 + bar, 1) << "\" y=\"" << Fixed(top + plot_h - ht, 1)
        << "\" width=\"" << Fixed(bar, 1) << "\" height=\"" << Fixed(ht, 1)
        << "\" fill=\"#2c5d9e\"><title>" << r.year << ": " << r.true_va
        << " true VA</title></rect>\n";
    svg << "<text x=\"" << Fixed(x0 + bar, 1) << "\" y=\"" << top + plot_h + 14
        << "\" text-anchor=\"middle\">" << r.year << "</text>\n";
    if (r.precision_pct) {
      const double y = top + plot_h - plot_h * *r.precision_pct / 100.0;
      if (!line_points.empty()) line_points.push_back(' ');
      line_points += Fixed(x0 + bar, 1) + "," + Fixed(y, 1);
    }
  }
  if (!line_points.empty()) {
    svg << "<polyline points=\"" << line_points
        << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
  }
  svg << "<text x=\"" << left << "\" y=\"" << height - 12
      << "\">light: candidates, dark: true VA, line: precision</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

const std::vector<std::string> &DefaultCountries() {
  static const std::vector<std::string> kCountries = {
      "Afghanistan", "Albania", "Algeria", "Andorra", "Angola", "Antigua and Barbuda",
      "Argentina", "Armenia", "Australia", "Austria", "Azerbaijan", "Bahamas", "Bahrain",
      "Bangladesh", "Barbados", "Belarus", "Belgium", "Belize", "Benin", "Bhutan", "Bolivia",
      "Bosnia and Herzegovina", "Botswana", "Brazil", "Brunei", "Bulgaria", "Burkina Faso",
      "Burundi", "Cambodia", "Cameroon", "Canada", "Cape Verde", "Central African Republic",
      "Chad", "Chile", "China", "Colombia", "Comoros", "Congo", "Costa Rica", "Croatia", "Cuba",
      "Cyprus", "Czech Republic", "Czechoslovakia", "Denmark", "Djibouti", "Dominica",
      "Dominican Republic", "East Germany", "Ecuador", "Egypt", "El Salvador",
      "Equatorial Guinea", "Eritrea", "Estonia", "Ethiopia", "Fiji", "Finland", "France",
      "Gabon", "Gambia", "Georgia", "Germany", "Ghana", "Greece", "Grenada", "Guatemala",
      "Guinea", "Guinea-Bissau", "Guyana", "Haiti", "Honduras", "Hungary", "Iceland", "India",
      "Indonesia", "Iran", "Iraq", "Ireland", "Israel", "Italy", "Ivory Coast", "Jamaica",
      "Japan", "Jordan", "Kazakhstan", "Kenya", "Kiribati", "Kosovo", "Kuwait", "Kyrgyzstan",
      "Laos", "Latvia", "Lebanon", "Lesotho", "Liberia", "Libya", "Liechtenstein", "Lithuania",
      "Luxembourg", "Macedonia", "Madagascar", "Malawi", "Malaysia", "Maldives", "Mali", "Malta",
      "Marshall Islands", "Mauritania", "Mauritius", "Mexico", "Micronesia", "Moldova", "Monaco",
      "Mongolia", "Montenegro", "Morocco", "Mozambique", "Myanmar", "Namibia", "Nauru", "Nepal",
      "Netherlands", "New Zealand", "Nicaragua", "Niger", "Nigeria", "North Korea", "Norway",
      "Oman", "Pakistan", "Palau", "Panama", "Papua New Guinea", "Paraguay", "Peru",
      "Philippines", "Poland", "Portugal", "Qatar", "Romania", "Russia", "Rwanda",
      "Saint Kitts and Nevis", "Saint Lucia", "Saint Vincent and the Grenadines", "Samoa",
      "San Marino", "Saudi Arabia", "Senegal", "Serbia", "Seychelles", "Sierra Leone",
      "Singapore", "Slovakia", "Slovenia", "Solomon Islands", "Somalia", "South Africa",
      "South Korea", "South Sudan", "Soviet Union", "Spain", "Sri Lanka", "Sudan", "Suriname",
      "Swaziland", "Sweden", "Switzerland", "Syria", "Taiwan", "Tajikistan", "Tanzania",
      "Thailand", "Togo", "Tonga", "Trinidad and Tobago", "Tunisia", "Turkey", "Turkmenistan",
      "Tuvalu", "Uganda", "Ukraine", "United Arab Emirates", "United Kingdom", "United States",
      "Uruguay", "Uzbekistan", "Vanuatu", "Vatican City", "Venezuela", "Vietnam", "West Germany",
      "Yemen", "Yugoslavia", "Zambia", "Zimbabwe",
  };
  return kCountries;
}

}  // namespace vaminer
