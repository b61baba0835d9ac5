#ifndef NewPing_h
#define NewPing_h

// Ultrasonic distance sensor driver (HC-SR04 and friends); median
// filtering over multiple pings per sensor.

#define MAX_SENSOR_DISTANCE 500
#define US_ROUNDTRIP_CM 57

class NewPing {
public:
  NewPing(unsigned char triggerPin, unsigned char echoPin, unsigned int maxDistance);
  unsigned int ping();
  unsigned int ping_cm();
  unsigned int ping_median(unsigned char iterations);
  static unsigned int convert_cm(unsigned int echoTime);
private:
  unsigned char triggerBit;
  unsigned char echoBit;
};

#endif
