#ifndef CapacitiveSensor_h
#define CapacitiveSensor_h

// Capacitive touch sensor using charge-transfer timing between a send
// and a receive pin; no extra hardware beyond a resistor.

class CapacitiveSensor {
public:
  CapacitiveSensor(unsigned char sendPin, unsigned char receivePin);
  long capacitiveSensor(unsigned char samples);
  long capacitiveSensorRaw(unsigned char samples);
  void set_CS_Timeout_Millis(unsigned long timeout);
  void reset_CS_AutoCal();
  void set_CS_AutocaL_Millis(unsigned long autoCal);
private:
  int error;
  unsigned long leastTotal;
};

#endif
