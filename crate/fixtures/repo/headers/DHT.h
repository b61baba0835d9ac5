#ifndef DHT_h
#define DHT_h

// Temperature and humidity sensor driver for the DHT series
// (DHT11, DHT21, DHT22). One wire per sensor.

#define DHT11 11
#define DHT21 21
#define DHT22 22

class DHT {
public:
  DHT(unsigned char pin, unsigned char type);
  void begin();
  float readTemperature(bool asFahrenheit);
  float convertCtoF(float celsius);
  float convertFtoC(float fahrenheit);
  float computeHeatIndex(float temperature, float percentHumidity);
  float readHumidity();
  bool read(bool force);
private:
  unsigned char data[5];
  unsigned char pin, type;
};

#endif
