#ifndef RTClib_h
#define RTClib_h

// Real-time clock drivers (DS1307, DS3231, PCF8523).

class DateTime {
public:
  DateTime(unsigned int year, unsigned char month, unsigned char day,
           unsigned char hour, unsigned char minute, unsigned char second);
  unsigned int year();
  unsigned char month();
  unsigned char day();
  unsigned char hour();
  unsigned char minute();
  unsigned char second();
  unsigned long unixtime();
};

class RTC_DS1307 {
public:
  bool begin();
  bool isrunning();
  void adjust(const DateTime &dt);
  DateTime now();
};

#endif
