#ifndef Servo_h
#define Servo_h

// Interrupt-driven servo control for up to twelve servos per timer.
// A servo is attached to a pin and driven by pulse width.

#define Servo_VERSION 2
#define MIN_PULSE_WIDTH 544
#define MAX_PULSE_WIDTH 2400
#define DEFAULT_PULSE_WIDTH 1500
#define REFRESH_INTERVAL 20000

typedef struct {
  unsigned char nbr;
  unsigned char isActive;
} ServoPin_t;

class Servo {
public:
  Servo();
  unsigned char attach(int pin);
  unsigned char attach(int pin, int min, int max);
  void detach();
  void write(int value);
  void writeMicroseconds(int value);
  int read();
  int readMicroseconds();
  bool attached();
private:
  unsigned char servoIndex;
  char min;
  char max;
};

#endif
