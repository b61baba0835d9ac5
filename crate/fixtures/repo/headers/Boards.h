#ifndef Boards_h
#define Boards_h

// Per-board pin capability macros. Each board variant declares how many
// servo channels it supports and which pins map to servo outputs.

#define MAX_SERVOS 12
#define SERVO_PIN_A 9
#define SERVO_PIN_B 10
#define SERVO_PIN_C 11

#if defined(ARDUINO_AVR_UNO)
#define TOTAL_ANALOG_PINS 6
#define TOTAL_PINS 20
#define IS_PIN_SERVO(p) ((p) >= 2 && (p) <= 13)
#define PIN_TO_SERVO(p) ((p) - 2)
#elif defined(ARDUINO_AVR_MEGA2560)
#define TOTAL_ANALOG_PINS 16
#define TOTAL_PINS 70
#define IS_PIN_SERVO(p) ((p) >= 2 && (p) - 2 < MAX_SERVOS)
#define PIN_TO_SERVO(p) ((p) - 2)
#endif

// servo helpers shared by every board definition
#define SERVO_MIN() (MIN_PULSE_WIDTH)
#define SERVO_MAX() (MAX_PULSE_WIDTH)

#endif
