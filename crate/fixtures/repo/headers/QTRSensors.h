#ifndef QTRSensors_h
#define QTRSensors_h

// Reflectance sensor array driver, compatible with Parallax QTI sensor
// modules and Pololu QTR strips. Reads charge-transfer decay per sensor.

#define QTR_EMITTERS_OFF 0
#define QTR_EMITTERS_ON 1
#define QTR_MAX_SENSORS 16

class QTRSensors {
public:
  void setTypeRC();
  void setSensorPins(const unsigned char *pins, unsigned char sensorCount);
  void setTimeout(unsigned int timeout);
  void read(unsigned int *sensorValues, unsigned char mode);
  unsigned int readLineBlack(unsigned int *sensorValues);
  unsigned int readLineWhite(unsigned int *sensorValues);
  void calibrate(unsigned char mode);
  void resetCalibration();
private:
  unsigned int timeout;
  unsigned char sensorCount;
};

#endif
