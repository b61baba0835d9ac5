#ifndef DallasTemperature_h
#define DallasTemperature_h

// Temperature sensor driver for Dallas DS18B20 family on a 1-Wire bus.

#define DEVICE_DISCONNECTED_C -127

class DallasTemperature {
public:
  DallasTemperature();
  void begin();
  unsigned char getDeviceCount();
  void requestTemperatures();
  float getTempCByIndex(unsigned char index);
  float getTempFByIndex(unsigned char index);
  void setResolution(unsigned char resolution);
  bool isParasitePowerMode();
};

#endif
