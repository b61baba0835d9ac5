#ifndef LED_h
#define LED_h

// Minimal led helper: wraps a digital pin as an led with blink support.

class LED {
public:
  LED(int ledPin);
  void on();
  void off();
  void toggle();
  void blink(unsigned int ms);
  void blink(unsigned int ms, int times);
  bool getState();
  void setValue(int brightness);
  void fadeIn(unsigned int ms);
  void fadeOut(unsigned int ms);
private:
  int ledPin;
  bool ledStatus;
};

#endif
