//! Shared fixtures for unit tests: the line-follower sketch, a matching
//! in-memory platform repository and hardware model.

use std::collections::BTreeMap;

use crate::hardware_graph::{HardwareModel, ModelBuilder};
use crate::platform_kb::{
    ComponentRecord, ComponentType, HeaderDocument, HistoryStore, PlatformRepository,
    PlatformTarget, SourceFunctionRecord,
};

/// Line follower sketch, two platform includes.
pub const LINE_FOLLOWER: &str = r#"#include "simpletools.h"
#include "abdrive.h"
const int leftQTI = 6; //Left QTI port
const int rightQTI = 7; //Right QTI port
const int LED = 8; //LED port
const int QTI_T = 50; //QTI sensor threshold
const int waitTime = 230; //QTI wait time
long GetQTIState(int comPort){
  set_output(comPort, 0b1);
  set_direction(comPort, 0b1);
  waitcnt(waitTime);
  set_direction(comPort, 0b0);
  waitcnt(waitTime);
  long state = get_state(comPort);
  return state;
}
int main(){
  while (1){
    long sLeft = GetQTIState(leftQTI);
    long sRight = GetQTIState(rightQTI);
    if (sLeft < QTI_T && sRight < QTI_T)
      drive_speed(24, 24); //continue straight
    else if (sLeft < QTI_T && sRight > QTI_T)
      drive_speed(24, 12); //turn left
    else if (sLeft > QTI_T && sRight > QTI_T){
      drive_speed(0, 0); //stop
      high(LED); //switch on LED
      pause(1000); //wait 1s
      low(LED); //switch off LED
      drive_speed(24, 24); //continue
    }
  }
}
"#;

pub fn propeller_signatures() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        (
            "set_output",
            "void set_output(int pin, int state)",
            "simpletools.h",
        ),
        (
            "set_direction",
            "void set_direction(int pin, int direction)",
            "simpletools.h",
        ),
        ("waitcnt", "void waitcnt(int ticks)", "simpletools.h"),
        ("get_state", "long get_state(int pin)", "simpletools.h"),
        ("high", "void high(int pin)", "simpletools.h"),
        ("low", "void low(int pin)", "simpletools.h"),
        ("pause", "void pause(int time)", "simpletools.h"),
        (
            "drive_speed",
            "void drive_speed(int left, int right)",
            "abdrive.h",
        ),
    ]
}

pub fn propeller_repo() -> PlatformRepository {
    let components = [
        ("arduino_Uno_Rev3", "Arduino Uno", ComponentType::Board),
        ("ServoModuleID", "Basic Servo", ComponentType::Output),
        ("HIH4030ModuleID", "QTI Sensor", ComponentType::Input),
        ("5mmColorLEDModuleID", "LED", ComponentType::Output),
        ("ResistorModuleID", "Resistor", ComponentType::Passive),
        ("9VBatteryModuleID", "9V Battery", ComponentType::Passive),
    ];
    let headers = [
        ("Servo", "class Servo servo attach write servo angle servo"),
        (
            "QTRSensors",
            "qtr reflectance sensor array qti compatible sensor",
        ),
        ("LED", "led on off toggle blink led helper"),
        ("Boards", "MAX_SERVOS servo pin map servo servo boards"),
        ("DHT", "dht humidity temperature sensor read"),
    ];
    PlatformRepository {
        target: PlatformTarget {
            id: "arduino_uno".to_string(),
            runtime_header: "Arduino.h".to_string(),
            output_extension: "ino".to_string(),
        },
        components: components
            .iter()
            .map(|(key, name, ctype)| ComponentRecord {
                match_keys: vec![key.to_string()],
                name: name.to_string(),
                ctype: *ctype,
                pins: None,
            })
            .collect(),
        source_functions: propeller_signatures()
            .into_iter()
            .map(|(name, signature, header)| SourceFunctionRecord {
                name: name.to_string(),
                signature: signature.to_string(),
                origin_header: header.to_string(),
            })
            .collect(),
        headers: headers
            .iter()
            .map(|(name, text)| HeaderDocument::new(name.to_string(), text.to_string()))
            .collect(),
        history: HistoryStore::default(),
    }
}

/// Hardware model matching the line-follower sketch: five mapped signal
/// pins, power wiring through a battery, an LED behind a resistor.
pub fn line_follower_model() -> HardwareModel {
    let mut builder = ModelBuilder::new();
    let board = builder.add_component(
        "arduino_Uno_Rev3",
        "Arduino Uno",
        "Arduino Uno",
        ComponentType::Board,
        &[
            ("c8", "8"),
            ("c9", "9"),
            ("c10", "10"),
            ("c11", "11"),
            ("c12", "12"),
            ("c13", "13"),
            ("cgnd", "GND"),
            ("cvin", "VIN"),
        ],
    );
    let servo1 = builder.add_component(
        "ServoModuleID",
        "Basic Servo1",
        "Basic Servo",
        ComponentType::Output,
        &[("sig", "WriteP1"), ("pwr", "PowerP1"), ("gnd", "GndP1")],
    );
    let servo2 = builder.add_component(
        "ServoModuleID",
        "Basic Servo2",
        "Basic Servo",
        ComponentType::Output,
        &[("sig", "WriteP1"), ("pwr", "PowerP1"), ("gnd", "GndP1")],
    );
    let hih1 = builder.add_component(
        "HIH4030ModuleID",
        "HIH4030 1",
        "QTI Sensor",
        ComponentType::Input,
        &[("sig", "ReadP1"), ("pwr", "PowerP1"), ("gnd", "GndP1")],
    );
    let hih2 = builder.add_component(
        "HIH4030ModuleID",
        "HIH4030 2",
        "QTI Sensor",
        ComponentType::Input,
        &[("sig", "ReadP1"), ("pwr", "PowerP1"), ("gnd", "GndP1")],
    );
    let led = builder.add_component(
        "5mmColorLEDModuleID",
        "Red (633nm)-LED1",
        "LED",
        ComponentType::Output,
        &[("anode", "WriteP1"), ("cathode", "GndP1")],
    );
    let resistor = builder.add_component(
        "ResistorModuleID",
        "220\u{3a9} Resistor1",
        "Resistor",
        ComponentType::Passive,
        &[("leg1", "Leg1"), ("leg2", "Leg2")],
    );
    let battery = builder.add_component(
        "9VBatteryModuleID",
        "9V Battery1",
        "9V Battery",
        ComponentType::Passive,
        &[("plus", "Plus"), ("minus", "Minus")],
    );

    let c = |b: &ModelBuilder, comp, slot| b.component_connector(comp, slot);
    let pairs = [
        (c(&builder, board, 0), c(&builder, servo2, 0)),
        (c(&builder, board, 1), c(&builder, servo1, 0)),
        (c(&builder, board, 2), c(&builder, hih2, 0)),
        (c(&builder, board, 3), c(&builder, hih1, 0)),
        (c(&builder, board, 4), c(&builder, resistor, 0)),
        (c(&builder, resistor, 1), c(&builder, led, 0)),
        (c(&builder, battery, 0), c(&builder, servo1, 1)),
        (c(&builder, battery, 0), c(&builder, servo2, 1)),
        (c(&builder, battery, 0), c(&builder, hih1, 1)),
        (c(&builder, battery, 0), c(&builder, hih2, 1)),
        (c(&builder, battery, 1), c(&builder, servo1, 2)),
        (c(&builder, battery, 1), c(&builder, servo2, 2)),
        (c(&builder, battery, 1), c(&builder, hih1, 2)),
        (c(&builder, battery, 1), c(&builder, hih2, 2)),
        (c(&builder, battery, 1), c(&builder, led, 1)),
    ];
    for (a, b) in pairs {
        builder.connect(a, b);
    }
    builder.build().unwrap()
}

pub fn line_follower_selections() -> BTreeMap<String, String> {
    [
        ("Basic Servo", "Servo"),
        ("QTI Sensor", "QTRSensors"),
        ("LED", "LED"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

/// The mapping set the line-follower fixture must produce, in order.
pub const EXPECTED_MAPPINGS: [(&str, &str); 5] = [
    ("BasicServo2WriteP1", "8"),
    ("BasicServo1WriteP1", "9"),
    ("HIH40302ReadP1", "10"),
    ("HIH40301ReadP1", "11"),
    ("Red633nm-LED1WriteP1", "12"),
];
