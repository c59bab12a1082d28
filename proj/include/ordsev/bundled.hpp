#ifndef ORDSEV_BUNDLED_HPP
#define ORDSEV_BUNDLED_HPP

#include <optional>
#include <string_view>

namespace ordsev::bundled {

// Eight-variable motorcycle crash-severity model with 14 dummy regressors.
// Mirrors assets/table4_schema.json.
inline constexpr std::string_view kTable4Schema = R"json({
  "outcome": {
    "name": "Severity",
    "classes": [
      "PDO",
      "Injury",
      "Fatal"
    ]
  },
  "variables": [
    {
      "name": "Collision Type",
      "categories": [
        "Motor-Vehicle",
        "Two-Motor",
        "Motor-Pedestrian",
        "Overturn",
        "Multi-Vehicle (>2)",
        "Multiple",
        "Other"
      ],
      "base": "Motor-Vehicle",
      "selected": [
        "Motor-Pedestrian",
        "Overturn",
        "Two-Motor"
      ]
    },
    {
      "name": "Collision Mode",
      "categories": [
        "Front-Left",
        "Front-Right",
        "Head-on",
        "Front-Rear",
        "Right-Left",
        "Other"
      ],
      "base": "Front-Left",
      "selected": [
        "Head-on"
      ]
    },
    {
      "name": "Road Type",
      "categories": [
        "Main Street",
        "Secondary Street",
        "Main Road",
        "Highway",
        "Secondary Road",
        "Rural Road",
        "Other"
      ],
      "base": "Main Street",
      "selected": [
        "Highway",
        "Secondary Street"
      ]
    },
    {
      "name": "Season",
      "categories": [
        "Spring/Summer",
        "Fall/Winter"
      ],
      "base": "Fall/Winter",
      "selected": [
        "Spring/Summer"
      ]
    },
    {
      "name": "Time of Day",
      "categories": [
        "Day",
        "Night",
        "Dawn/Dusk"
      ],
      "base": "Day",
      "selected": [
        "Night",
        "Dawn/Dusk"
      ]
    },
    {
      "name": "Rider's Fault",
      "categories": [
        "not at-Fault",
        "at-Fault"
      ],
      "base": "at-Fault",
      "selected": [
        "not at-Fault"
      ]
    },
    {
      "name": "Rider's Age",
      "categories": [
        "Under25",
        "26to55",
        "Over56"
      ],
      "base": "26to55",
      "selected": [
        "Under25",
        "Over56"
      ]
    },
    {
      "name": "Rider's Education",
      "categories": [
        "Sec. School/Less",
        "Diploma",
        "College/Higher"
      ],
      "base": "Diploma",
      "selected": [
        "Sec. School/Less",
        "College/Higher"
      ]
    }
  ]
}
)json";

// The same schema with observed marginal category counts as covariate
// frequencies and the reference estimates as true parameters. Mirrors
// assets/table4_dgp.json.
inline constexpr std::string_view kTable4Dgp = R"json({
  "outcome": {
    "name": "Severity",
    "classes": [
      "PDO",
      "Injury",
      "Fatal"
    ]
  },
  "variables": [
    {
      "name": "Collision Type",
      "categories": [
        "Motor-Vehicle",
        "Two-Motor",
        "Motor-Pedestrian",
        "Overturn",
        "Multi-Vehicle (>2)",
        "Multiple",
        "Other"
      ],
      "base": "Motor-Vehicle",
      "selected": [
        "Motor-Pedestrian",
        "Overturn",
        "Two-Motor"
      ]
    },
    {
      "name": "Collision Mode",
      "categories": [
        "Front-Left",
        "Front-Right",
        "Head-on",
        "Front-Rear",
        "Right-Left",
        "Other"
      ],
      "base": "Front-Left",
      "selected": [
        "Head-on"
      ]
    },
    {
      "name": "Road Type",
      "categories": [
        "Main Street",
        "Secondary Street",
        "Main Road",
        "Highway",
        "Secondary Road",
        "Rural Road",
        "Other"
      ],
      "base": "Main Street",
      "selected": [
        "Highway",
        "Secondary Street"
      ]
    },
    {
      "name": "Season",
      "categories": [
        "Spring/Summer",
        "Fall/Winter"
      ],
      "base": "Fall/Winter",
      "selected": [
        "Spring/Summer"
      ]
    },
    {
      "name": "Time of Day",
      "categories": [
        "Day",
        "Night",
        "Dawn/Dusk"
      ],
      "base": "Day",
      "selected": [
        "Night",
        "Dawn/Dusk"
      ]
    },
    {
      "name": "Rider's Fault",
      "categories": [
        "not at-Fault",
        "at-Fault"
      ],
      "base": "at-Fault",
      "selected": [
        "not at-Fault"
      ]
    },
    {
      "name": "Rider's Age",
      "categories": [
        "Under25",
        "26to55",
        "Over56"
      ],
      "base": "26to55",
      "selected": [
        "Under25",
        "Over56"
      ]
    },
    {
      "name": "Rider's Education",
      "categories": [
        "Sec. School/Less",
        "Diploma",
        "College/Higher"
      ],
      "base": "Diploma",
      "selected": [
        "Sec. School/Less",
        "College/Higher"
      ]
    }
  ],
  "frequencies": {
    "Collision Type": {
      "Motor-Vehicle": 29718,
      "Two-Motor": 3158,
      "Motor-Pedestrian": 2293,
      "Overturn": 1683,
      "Multi-Vehicle (>2)": 646,
      "Multiple": 486,
      "Other": 849
    },
    "Collision Mode": {
      "Front-Left": 7670,
      "Front-Right": 7016,
      "Head-on": 6634,
      "Front-Rear": 5630,
      "Right-Left": 4650,
      "Other": 7233
    },
    "Road Type": {
      "Main Street": 25960,
      "Secondary Street": 3476,
      "Main Road": 3149,
      "Highway": 2247,
      "Secondary Road": 2101,
      "Rural Road": 1361,
      "Other": 539
    },
    "Season": {
      "Spring/Summer": 22943,
      "Fall/Winter": 15890
    },
    "Time of Day": {
      "Day": 26472,
      "Night": 11173,
      "Dawn/Dusk": 1188
    },
    "Rider's Fault": {
      "not at-Fault": 23079,
      "at-Fault": 15754
    },
    "Rider's Age": {
      "Under25": 14098,
      "26to55": 22466,
      "Over56": 2269
    },
    "Rider's Education": {
      "Sec. School/Less": 7797,
      "Diploma": 29310,
      "College/Higher": 1726
    }
  },
  "beta": {
    "Collision Type: Motor-Pedestrian": 2.553,
    "Collision Type: Overturn": 2.007,
    "Collision Type: Two-Motor": 0.391,
    "Collision Mode: Head-on": 0.087,
    "Road Type: Highway": -0.347,
    "Road Type: Secondary Street": 0.091,
    "Season: Spring/Summer": 0.391,
    "Time of Day: Night": 0.381,
    "Time of Day: Dawn/Dusk": 0.179,
    "Rider's Fault: not at-Fault": 1.078,
    "Rider's Age: Under25": 0.49,
    "Rider's Age: Over56": 0.743,
    "Rider's Education: Sec. School/Less": 0.154,
    "Rider's Education: College/Higher": -0.627
  },
  "cutoffs": [
    -0.357,
    6.348
  ],
  "n": 100000,
  "seed": 42
}
)json";

/// Resolves a bundled asset name ("table4", "table4_dgp").
inline std::optional<std::string_view> lookup(std::string_view name) {
  if (name == "table4" || name == "table4_schema") return kTable4Schema;
  if (name == "table4_dgp") return kTable4Dgp;
  return std::nullopt;
}

}  // namespace ordsev::bundled

#endif  // ORDSEV_BUNDLED_HPP
